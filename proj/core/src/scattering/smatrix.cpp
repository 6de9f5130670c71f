#include "oplab/scattering/smatrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"
#include "oplab/parallel.hpp"

namespace oplab::scattering {

namespace {

using Real2 = std::array<double, 4>;  // row-major 2x2

/// Y' = [[0, 1], [V - k^2, 0]] Y from x0 to x1 in `steps` equal RK4 steps,
/// with V sampled strictly inside (x0, x1).
void rk4_piece(const Potential& v, double k2, double x0, double x1, long steps, Real2& y) {
  const double h = (x1 - x0) / static_cast<double>(steps);
  const double guard = 1e-12 * std::max(1.0, std::abs(x1 - x0));
  const auto q = [&](double x) { return v(std::clamp(x, x0 + guard, x1 - guard)) - k2; };
  const auto rhs = [](double qx, const Real2& m) -> Real2 { return {m[2], m[3], qx * m[0], qx * m[1]}; };
  for (long s = 0; s < steps; ++s) {
    const double x = x0 + static_cast<double>(s) * h;
    const double q0 = q(x);
    const double qm = q(x + 0.5 * h);
    const double q1 = q(x + h);
    const Real2 a = rhs(q0, y);
    Real2 tmp;
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * a[i];
    const Real2 b = rhs(qm, tmp);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * b[i];
    const Real2 c = rhs(qm, tmp);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * c[i];
    const Real2 d = rhs(q1, tmp);
    for (int i = 0; i < 4; ++i) y[i] += h / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
  }
}

struct Integration {
  Real2 y;
  double x_left;
  double x_right;
  long steps;
};

Integration integrate(const Potential& v, double k, Real2 y0) {
  const double a = v.support_radius();
  Integration out{y0, -a - 1.0, a + 1.0, 0};
  const double h = integrator_step(v, k);
  std::vector<double> edges = {out.x_left};
  for (double b : v.breakpoints()) {
    if (b > edges.back()) edges.push_back(b);
  }
  edges.push_back(out.x_right);
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    const long steps = std::max(1L, static_cast<long>(std::ceil((edges[p + 1] - edges[p]) / h)));
    rk4_piece(v, k * k, edges[p], edges[p + 1], steps, out.y);
    out.steps += steps;
  }
  return out;
}

Matrix2c plane_waves(double k, double x) {
  const cplx i{0.0, 1.0};
  const cplx ep = std::exp(i * k * x);
  const cplx em = std::exp(-i * k * x);
  Matrix2c p;
  p << ep, em, i * k * ep, -i * k * em;
  return p;
}

}  // namespace

double integrator_step(const Potential& v, double k) {
  return std::min(0.01, 0.01 / std::sqrt(k * k + v.max_abs()));
}

TransferResult transfer_matrix_detailed(const Potential& v, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("transfer_matrix: k must be positive");
  const Integration r = integrate(v, k, {1.0, 0.0, 0.0, 1.0});
  const double det = r.y[0] * r.y[3] - r.y[1] * r.y[2];
  TransferResult out;
  out.wronskian_drift = std::abs(det - 1.0);
  out.steps = r.steps;
  if (!(det > 0.0)) throw NonConvergenceError("transfer_matrix: fundamental matrix lost its orientation", 0);
  const double norm = 1.0 / std::sqrt(det);
  Matrix2c y;
  y << r.y[0] * norm, r.y[1] * norm, r.y[2] * norm, r.y[3] * norm;
  out.m = plane_waves(k, r.x_right).inverse() * y * plane_waves(k, r.x_left);
  return out;
}

Matrix2c transfer_matrix(const Potential& v, double k) { return transfer_matrix_detailed(v, k).m; }

double zero_energy_slope(const Potential& v) {
  const Integration r = integrate(v, 0.0, {1.0, 0.0, 0.0, 1.0});
  return r.y[2];
}

double integrator_self_test(double k, double support_radius) {
  const Potential zero([](double) { return 0.0; }, support_radius, {}, "free");
  const Matrix2c m = transfer_matrix(zero, k);
  const double drift = (m - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  if (drift > constants::kIntegratorDriftLimit) {
    throw NonConvergenceError("transfer_matrix: integrator self-test drift above limit at k = " + std::to_string(k),
                              static_cast<int>(std::lround(-std::log10(drift))));
  }
  return drift;
}

Matrix2c s_from_transfer(const Matrix2c& m) {
  Matrix2c s;
  s << 1.0, m(0, 1), -m(1, 0), 1.0;
  return s / m(1, 1);
}

double unitarity_residual(const Matrix2c& s) {
  return (s.adjoint() * s - Matrix2c::Identity()).cwiseAbs().maxCoeff();
}

double ScatteringCurve::max_unitarity_residual() const {
  return unitarity_residuals.empty() ? 0.0 : *std::max_element(unitarity_residuals.begin(), unitarity_residuals.end());
}

std::vector<double> log_grid(double k_lo, double k_hi, int n) {
  if (!(k_lo > 0.0) || !(k_hi > k_lo) || n < 2) throw DomainError("log_grid: need 0 < k_lo < k_hi and n >= 2");
  std::vector<double> k(static_cast<size_t>(n));
  const double step = std::log(k_hi / k_lo) / (n - 1);
  for (int j = 0; j < n; ++j) k[static_cast<size_t>(j)] = k_lo * std::exp(step * j);
  k.back() = k_hi;
  return k;
}

ScatteringCurve scattering_matrix(const Potential& v, std::vector<double> k_grid, int node_budget) {
  if (k_grid.empty()) throw DomainError("scattering_matrix: empty k grid");
  for (size_t i = 0; i < k_grid.size(); ++i) {
    if (!(k_grid[i] > 0.0) || (i > 0 && !(k_grid[i] > k_grid[i - 1]))) {
      throw DomainError("scattering_matrix: k grid must be positive and strictly ascending");
    }
  }
  ScatteringCurve curve;
  curve.self_test_drift = integrator_self_test(k_grid.back(), v.support_radius());

  const auto compute = [&v](const double& k) { return s_from_transfer(transfer_matrix(v, k)); };
  curve.k = std::move(k_grid);
  curve.s = parallel_map(curve.k, compute);

  while (true) {
    std::vector<double> inserts;
    for (size_t i = 0; i + 1 < curve.k.size(); ++i) {
      const double step = std::arg(curve.s[i + 1].determinant() / curve.s[i].determinant());
      if (std::abs(step) >= 0.25 * constants::kPi) inserts.push_back(std::sqrt(curve.k[i] * curve.k[i + 1]));
    }
    if (inserts.empty()) break;
    if (curve.k.size() + inserts.size() > static_cast<size_t>(node_budget)) {
      throw InconclusiveError("scattering_matrix: refinement exceeds the node budget (undersampled)");
    }
    const auto extra = parallel_map(inserts, compute);
    std::vector<double> k;
    std::vector<Matrix2c> s;
    size_t j = 0;
    for (size_t i = 0; i < curve.k.size(); ++i) {
      k.push_back(curve.k[i]);
      s.push_back(curve.s[i]);
      if (j < inserts.size() && i + 1 < curve.k.size() && inserts[j] < curve.k[i + 1] && inserts[j] > curve.k[i]) {
        k.push_back(inserts[j]);
        s.push_back(extra[j]);
        ++j;
      }
    }
    curve.k = std::move(k);
    curve.s = std::move(s);
  }
  for (const auto& s : curve.s) {
    curve.unitarity_residuals.push_back(unitarity_residual(s));
    curve.reciprocity_residuals.push_back(std::abs(s(0, 0) - s(1, 1)));
  }
  return curve;
}

}  // namespace oplab::scattering
