#include "oplab/witten/diagnostics.hpp"

#include <cmath>
#include <numeric>

#include "oplab/error.hpp"

namespace oplab::witten {

namespace {

double total(const std::vector<double>& s) { return std::accumulate(s.begin(), s.end(), 0.0); }

LatticeOperator dirac_like(const LatticeOperator& a1, const GridSpec& grid) {
  return discretize_dirac(grid, a1.components());
}

double fit_decay(const std::vector<double>& s) {
  std::vector<double> lx;
  std::vector<double> ly;
  const double floor = s.empty() ? 0.0 : 1e-14 * s.front();
  size_t nonzero = 0;
  while (nonzero < s.size() && s[nonzero] > floor) ++nonzero;
  if (nonzero < 8) return 0.0;
  for (size_t k = nonzero / 5; k < nonzero; ++k) {
    lx.push_back(std::log(static_cast<double>(k + 1)));
    ly.push_back(-std::log(s[k]));
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

std::vector<double> relative_singular_values(const LatticeOperator& a1, const PerturbationProfile& b, int p) {
  if (p < 0) throw DomainError("relative_trace_class_diagnostic: p must be non-negative");
  const EigenSystem es = herm_eig(a1.as_hermitian());
  ComplexVector r(es.values.size());
  for (Eigen::Index k = 0; k < r.size(); ++k) r(k) = std::pow(cplx(es.values(k), 1.0), -(p + 1));
  const DenseMatrix resolvent = es.vectors * r.asDiagonal() * es.vectors.adjoint();
  return singular_values(b.on_grid(a1.grid()).matrix() * resolvent);
}

TraceClassReport relative_trace_class_diagnostic(const LatticeOperator& a1, const PerturbationProfile& b, int p,
                                                 double relative_tolerance) {
  TraceClassReport rep;
  rep.p = p;
  rep.singular_values = relative_singular_values(a1, b, p);
  rep.partial_sums.resize(rep.singular_values.size());
  std::partial_sum(rep.singular_values.begin(), rep.singular_values.end(), rep.partial_sums.begin());
  rep.total_base = total(rep.singular_values);

  const GridSpec& g = a1.grid();
  const GridSpec refined(g.half_width(), 2 * g.points());
  const GridSpec extended(2.0 * g.half_width(), 2 * g.points());
  rep.total_refined = total(relative_singular_values(dirac_like(a1, refined), b, p));
  rep.total_extended = total(relative_singular_values(dirac_like(a1, extended), b, p));
  rep.decay_exponent = fit_decay(rep.singular_values);

  const double scale = std::max(rep.total_base, 1e-300);
  rep.stable_under_refinement = std::abs(rep.total_refined - rep.total_base) <= relative_tolerance * scale;
  rep.stable_under_extension = std::abs(rep.total_extended - rep.total_refined) <= relative_tolerance * scale;
  rep.plausibly_trace_class = rep.stable_under_refinement && rep.stable_under_extension;
  if (rep.total_base == 0.0 && rep.total_refined == 0.0 && rep.total_extended == 0.0) {
    rep.stable_under_refinement = rep.stable_under_extension = rep.plausibly_trace_class = true;
  }
  return rep;
}

}  // namespace oplab::witten
