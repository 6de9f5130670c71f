#include "oplab/witten/heat_trace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oplab/parallel.hpp"
#include "oplab/quadrature.hpp"

namespace oplab::witten {

using constants::kPi;

namespace {

/// int_1^2 tr(exp(-t (A + (s-1) B)^2) B) ds for every t.
std::vector<double> s_integral(const LatticeOperator& a, const LatticeOperator& b, std::span<const double> t,
                               int s_nodes) {
  if (s_nodes < 2) throw DomainError("heat trace: s_nodes must be at least 2");
  for (double ti : t) {
    if (!(ti > 0.0)) throw DomainError("heat trace: t must be positive");
  }
  const QuadratureRule rule = gauss_legendre(s_nodes, 1.0, 2.0);
  const int d = b.components();
  const int n = b.grid().points();

  auto per_node = [&](const double& s) {
    const EigenSystem es = herm_eig((a + b * (s - 1.0)).as_hermitian());
    const DenseMatrix& v = es.vectors;
    DenseMatrix bv(v.rows(), v.cols());
    for (int j = 0; j < n; ++j) {
      bv.middleRows(j * d, d).noalias() = b.matrix().block(j * d, j * d, d, d) * v.middleRows(j * d, d);
    }
    const RealVector weight = v.cwiseProduct(bv.conjugate()).colwise().sum().real().transpose();
    std::vector<double> out(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
      out[i] = ((-t[i] * es.values.array().square()).exp() * weight.array()).sum();
    }
    return out;
  };
  const auto per_s = parallel_map(rule.nodes, per_node);

  std::vector<double> total(t.size(), 0.0);
  for (size_t k = 0; k < rule.nodes.size(); ++k) {
    for (size_t i = 0; i < t.size(); ++i) total[i] += rule.weights[k] * per_s[k][i];
  }
  return total;
}

}  // namespace

std::vector<double> heat_trace_rhs(const LatticeOperator& a, const PerturbationProfile& b, std::span<const double> t,
                                   int s_nodes) {
  if (b.is_zero()) return std::vector<double>(t.size(), 0.0);
  const auto integral = s_integral(a, b.on_grid(a.grid()), t, s_nodes);
  std::vector<double> out(t.size());
  for (size_t i = 0; i < t.size(); ++i) out[i] = constants::kWittenSign * std::sqrt(t[i] / kPi) * integral[i];
  return out;
}

double heat_trace_rhs(const LatticeOperator& a, const PerturbationProfile& b, double t, int s_nodes) {
  const double ts[] = {t};
  return heat_trace_rhs(a, b, ts, s_nodes).front();
}

std::vector<double> geometric_schedule(double t0, int j_max) {
  if (!(t0 > 0.0) || j_max < 0) throw DomainError("geometric_schedule: need t0 > 0 and j_max >= 0");
  std::vector<double> t(static_cast<size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) t[static_cast<size_t>(j)] = std::ldexp(t0, j);
  return t;
}

double validity_ceiling(const GridSpec& grid) {
  const double r = grid.half_width() / kPi;
  return 0.25 * r * r;
}

WittenEstimate detect_plateau(std::vector<double> t, std::vector<double> values, double ceiling,
                              double max_uncertainty) {
  WittenEstimate est;
  est.t_samples = std::move(t);
  est.rhs_values = std::move(values);
  est.ceiling = ceiling;
  const auto& ts = est.t_samples;
  const auto& vs = est.rhs_values;

  size_t best_begin = 0;
  size_t best_len = 0;
  size_t i = 0;
  while (i < ts.size() && ts[i] <= ceiling) {
    size_t j = i + 1;
    while (j < ts.size() && ts[j] <= ceiling && std::abs(vs[j] - vs[j - 1]) < constants::kPlateauStep) ++j;
    if (j - i >= best_len) {
      best_begin = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len < static_cast<size_t>(constants::kPlateauMinSamples)) {
    throw PlateauNotFound("witten_index_estimate: no plateau of sufficient length below the validity ceiling",
                          std::move(est));
  }
  const auto first = vs.begin() + static_cast<std::ptrdiff_t>(best_begin);
  const auto last = first + static_cast<std::ptrdiff_t>(best_len);
  est.plateau_value = std::accumulate(first, last, 0.0) / static_cast<double>(best_len);
  est.uncertainty = 0.0;
  for (auto it = first; it != last; ++it) est.uncertainty = std::max(est.uncertainty, std::abs(*it - est.plateau_value));
  est.plateau_window = {ts[best_begin], ts[best_begin + best_len - 1]};
  if (est.uncertainty > max_uncertainty) {
    throw PlateauNotFound("witten_index_estimate: plateau uncertainty exceeds the requested bound", std::move(est));
  }
  return est;
}

WittenEstimate witten_index_estimate(const LatticeOperator& a, const PerturbationProfile& b,
                                     std::span<const double> t_schedule, int s_nodes, double max_uncertainty) {
  if (t_schedule.size() < 8) throw DomainError("witten_index_estimate: schedule needs at least 8 points");
  if (!std::is_sorted(t_schedule.begin(), t_schedule.end()) ||
      std::adjacent_find(t_schedule.begin(), t_schedule.end()) != t_schedule.end()) {
    throw DomainError("witten_index_estimate: schedule must be strictly ascending");
  }
  auto values = heat_trace_rhs(a, b, t_schedule, s_nodes);
  return detect_plateau({t_schedule.begin(), t_schedule.end()}, std::move(values), validity_ceiling(a.grid()),
                        max_uncertainty);
}

double witten_index_closed_form(const PerturbationProfile& b) {
  const auto cert = b.decay_certificate();
  if (!cert) throw InconclusiveError("witten_index_closed_form: profile has no decay certificate (insufficient decay)");
  const double bound = *cert * b.components();
  const auto r = integrate_line([&b](double x) { return b.trace_at(x); }, bound,
                                2.0 * kPi * constants::kClosedFormTolerance);
  return r.value / (2.0 * kPi);
}

CompositionReport check_composition(const LatticeOperator& a1, const PerturbationProfile& b1,
                                    const PerturbationProfile& b2, std::span<const double> t_schedule, int s_nodes) {
  if (!b1.decay_certificate() || !b2.decay_certificate()) {
    throw DomainError("check_composition: both profiles need decay certificates");
  }
  const auto a2 = a1 + b1.on_grid(a1.grid());
  CompositionReport r;
  r.w12 = witten_index_estimate(a1, b1, t_schedule, s_nodes);
  r.w23 = witten_index_estimate(a2, b2, t_schedule, s_nodes);
  r.w13 = witten_index_estimate(a1, b1 + b2, t_schedule, s_nodes);
  r.heat_residual = std::abs(r.w12.plateau_value + r.w23.plateau_value - r.w13.plateau_value);
  r.closed_12 = witten_index_closed_form(b1);
  r.closed_23 = witten_index_closed_form(b2);
  r.closed_13 = witten_index_closed_form(b1 + b2);
  r.closed_form_residual = std::abs(r.closed_12 + r.closed_23 - r.closed_13);
  return r;
}

PathSplitting path_splitting_check(const LatticeOperator& a1, const PerturbationProfile& b1,
                                   const PerturbationProfile& b2, double t, int s_nodes) {
  const double ts[] = {t};
  const auto g1 = b1.on_grid(a1.grid());
  const auto g2 = b2.on_grid(a1.grid());
  PathSplitting r;
  r.direct = s_integral(a1, g1 + g2, ts, s_nodes).front();
  r.split = s_integral(a1, g1, ts, s_nodes).front() + s_integral(a1 + g1, g2, ts, s_nodes).front();
  r.residual = std::abs(r.direct - r.split);
  return r;
}

}  // namespace oplab::witten
