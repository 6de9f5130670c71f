#include "oplab/witten/suspension.hpp"

#include <cmath>

#include "oplab/error.hpp"
#include "oplab/parallel.hpp"

namespace oplab::witten {

namespace {
constexpr double kAdjointTolerance = 1e-10;
}

SuspensionOperator::SuspensionOperator(DenseMatrix d, DenseMatrix d_star, GridSpec t_grid, GridSpec x_grid,
                                       ThetaProfile theta, std::vector<double> theta_samples, int components)
    : d_(std::move(d)),
      d_star_(std::move(d_star)),
      t_grid_(t_grid),
      x_grid_(x_grid),
      theta_(std::move(theta)),
      theta_samples_(std::move(theta_samples)),
      components_(components) {}

double SuspensionOperator::adjoint_mismatch() const { return max_abs(d_.adjoint() - d_star_); }

double SuspensionOperator::normality_defect() const { return max_abs(d_ * d_star_ - d_star_ * d_); }

std::vector<Eigen::Index> SuspensionOperator::central_window() const {
  const Eigen::Index block = static_cast<Eigen::Index>(x_grid_.points()) * components_;
  const double half = 0.5 * t_grid_.half_width();
  std::vector<Eigen::Index> rows;
  for (int j = 0; j < t_grid_.points(); ++j) {
    if (std::abs(t_grid_.node(j)) > half) continue;
    for (Eigen::Index r = 0; r < block; ++r) rows.push_back(j * block + r);
  }
  return rows;
}

SuspensionOperator build_suspension(const LatticeOperator& a1, const PerturbationProfile& b, const ThetaProfile& theta,
                                    const GridSpec& t_grid, const GridSpec& x_grid) {
  if (!(a1.grid() == x_grid) || a1.components() != b.components()) {
    throw DomainError("build_suspension: A1 does not live on the x-grid");
  }
  theta.check_on(t_grid);
  const int nt = t_grid.points();
  std::vector<double> th(static_cast<size_t>(nt));
  for (int j = 0; j < nt; ++j) th[static_cast<size_t>(j)] = theta(t_grid.node(j));

  const DenseMatrix dt = spectral_derivative(t_grid);
  const Eigen::Index block = a1.matrix().rows();
  const DenseMatrix ix = DenseMatrix::Identity(block, block);
  const DenseMatrix it = DenseMatrix::Identity(nt, nt);
  DenseMatrix m_theta = DenseMatrix::Zero(nt, nt);
  for (int j = 0; j < nt; ++j) m_theta(j, j) = th[static_cast<size_t>(j)];
  const DenseMatrix bx = b.on_grid(x_grid).matrix();

  const DenseMatrix common = kron(it, a1.matrix()) + kron(m_theta, bx);
  DenseMatrix d = kron(dt, ix) + common;
  DenseMatrix d_star = kron(DenseMatrix(-dt), ix) + common;
  return SuspensionOperator(std::move(d), std::move(d_star), t_grid, x_grid, theta, std::move(th), b.components());
}

std::vector<double> ptf_lhs(const SuspensionOperator& d, std::span<const double> t) {
  for (double ti : t) {
    if (!(ti > 0.0)) throw DomainError("ptf_lhs: t must be positive");
  }
  if (d.adjoint_mismatch() > kAdjointTolerance * std::max(1.0, max_abs(d.matrix()))) {
    throw VerificationError("ptf_lhs: D* is not the adjoint of D (assembly inconsistency)");
  }
  const std::vector<int> which = {0, 1};
  const auto systems = parallel_map(which, [&d](const int& k) {
    const DenseMatrix prod = k == 0 ? DenseMatrix(d.adjoint_matrix() * d.matrix())
                                    : DenseMatrix(d.matrix() * d.adjoint_matrix());
    return herm_eig(HermitianMatrix(prod));
  });
  const auto window = d.central_window();
  std::vector<double> out(t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    out[i] = windowed_heat_trace(systems[0], t[i], window) - windowed_heat_trace(systems[1], t[i], window);
  }
  return out;
}

double ptf_lhs(const SuspensionOperator& d, double t) {
  const double ts[] = {t};
  return ptf_lhs(d, ts).front();
}

}  // namespace oplab::witten
