#include "oplab/scattering/levinson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"

namespace oplab::scattering {

using constants::kPi;

namespace {

struct LineFit {
  double c0 = 0.0;
  double c1 = 0.0;
};

/// Least squares y = c0 + c1 x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (x.size() < 2 || den == 0.0) throw InconclusiveError("fit: need at least two distinct abscissae");
  LineFit f;
  f.c1 = (n * sxy - sx * sy) / den;
  f.c0 = (sy - f.c1 * sx) / n;
  return f;
}

}  // namespace

int count_negative_eigenvalues(const Potential& v, const GridSpec& grid) {
  // Interior nodes j = 1 .. n-1; walls at -L and +L.
  const int n = grid.points();
  const double h = grid.spacing();
  const double off = -1.0 / (h * h);
  int negatives = 0;
  double pivot = 0.0;
  for (int j = 1; j < n; ++j) {
    const double diag = 2.0 / (h * h) + v(grid.node(j));
    pivot = (j == 1) ? diag : diag - off * off / pivot;
    if (pivot == 0.0) pivot = -1e-300;
    if (pivot < 0.0) ++negatives;
  }
  return negatives;
}

GridSpec default_bound_state_grid(const Potential& v) {
  const double half = std::max(100.0, 5.0 * v.support_radius());
  return GridSpec(half, 2 * static_cast<int>(std::ceil(half / 0.01)));
}

int bound_states(const Potential& v, const GridSpec& grid) {
  if (grid.half_width() < 5.0 * v.support_radius()) {
    throw DomainError("bound_states: grid half-width must be at least 5x the support radius");
  }
  const int base = count_negative_eigenvalues(v, grid);
  const int refined = count_negative_eigenvalues(v, GridSpec(grid.half_width(), 2 * grid.points()));
  const int extended = count_negative_eigenvalues(v, GridSpec(2.0 * grid.half_width(), 2 * grid.points()));
  if (base != refined || base != extended) {
    std::ostringstream os;
    os << "bound_states: count not stable under refinement (" << base << ", " << refined << ", " << extended << ")";
    throw InconclusiveError(os.str());
  }
  return base;
}

int bound_states(const Potential& v) { return bound_states(v, default_bound_state_grid(v)); }

PhaseWinding phase_winding(const ScatteringCurve& curve) {
  const auto& k = curve.k;
  if (k.size() < 8) throw DomainError("phase_winding: curve needs at least 8 samples");
  PhaseWinding out;
  out.unwrapped.resize(k.size());
  out.unwrapped[0] = std::arg(curve.s[0].determinant());
  for (size_t i = 1; i < k.size(); ++i) {
    const double step = std::arg(curve.s[i].determinant() / curve.s[i - 1].determinant());
    if (std::abs(step) > kPi) throw InconclusiveError("phase_winding: argument jump above pi (undersampled)");
    out.unwrapped[i] = out.unwrapped[i - 1] + step;
  }

  std::vector<double> hx, hy, tx, ty;
  for (size_t i = 0; i < k.size(); ++i) {
    if (k[i] <= 2.0 * k.front()) {
      hx.push_back(k[i]);
      hy.push_back(out.unwrapped[i]);
    }
    if (k[i] >= 0.5 * k.back()) {
      tx.push_back(1.0 / k[i]);
      ty.push_back(out.unwrapped[i]);
    }
  }
  if (hx.size() < 3 || tx.size() < 3) {
    throw InconclusiveError("phase_winding: too few samples near the ends for extrapolation");
  }
  out.head = fit_line(hx, hy).c0;
  out.tail = fit_line(tx, ty).c0;
  out.total = out.tail - out.head;
  return out;
}

std::vector<double> default_k_head() { return {4e-3, 3e-3, 2e-3, 1e-3}; }

ResonanceVerdict resonance_detect(const Potential& v, const std::vector<double>& k_head) {
  if (k_head.size() < 2) throw DomainError("resonance_detect: need at least two head samples");
  std::vector<double> mag;
  for (double k : k_head) {
    if (!(k > 0.0) || k > 0.1) throw DomainError("resonance_detect: head samples must lie in (0, 0.1]");
    mag.push_back(std::abs(s_from_transfer(transfer_matrix(v, k))(0, 0)));
  }
  ResonanceVerdict out;
  out.evidence = fit_line(k_head, mag).c0;
  if (out.evidence >= constants::kResonanceHigh) {
    out.m_r0 = 1;
  } else if (out.evidence <= constants::kResonanceLow) {
    out.m_r0 = 0;
  } else {
    std::ostringstream os;
    os << "resonance_detect: extrapolated |t(0)| = " << out.evidence << " lies in the guard band";
    throw InconclusiveError(os.str());
  }
  return out;
}

std::vector<double> default_k_grid(const Potential& v) {
  const double k_max = std::max(100.0, 20.0 * v.l1_norm());
  const int decades = static_cast<int>(std::ceil(std::log10(k_max / constants::kKMin)));
  return log_grid(constants::kKMin, k_max, 40 * decades + 1);
}

LevinsonReport levinson_check(const Potential& v) {
  LevinsonReport r;
  r.convention = std::string(constants::kTagLevinson);
  r.n_bound = bound_states(v);
  const auto res = resonance_detect(v, default_k_head());
  r.m_r0 = res.m_r0;
  r.resonance_evidence = res.evidence;
  r.curve = scattering_matrix(v, default_k_grid(v));
  r.winding = phase_winding(r.curve);
  r.phase_winding = r.winding.total;
  r.predicted = constants::kLevinsonSign * (0.5 * r.phase_winding) / kPi + 0.5 * (1 - r.m_r0);
  r.residual = std::abs(r.n_bound - r.predicted);
  r.accepted = r.residual <= constants::kLevinsonTolerance;
  return r;
}

double locate_resonance_depth(double half_width, double lo, double hi, double scan_step, double k_probe) {
  if (!(lo > 0.0) || !(hi > lo) || !(scan_step > 0.0)) throw DomainError("locate_resonance_depth: bad scan range");
  double best = lo;
  double best_t = -1.0;
  for (double v0 = lo; v0 <= hi + 1e-12; v0 += scan_step) {
    const double t = std::abs(s_from_transfer(transfer_matrix(Potential::square_well(v0, half_width), k_probe))(0, 0));
    if (t > best_t) {
      best_t = t;
      best = v0;
    }
  }
  double a = std::max(lo, best - scan_step);
  double b = std::min(hi, best + scan_step);
  const auto slope = [half_width](double v0) { return zero_energy_slope(Potential::square_well(v0, half_width)); };
  double fa = slope(a);
  const double fb = slope(b);
  if (fa == 0.0) return a;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw InconclusiveError("locate_resonance_depth: no zero-energy threshold near the scan maximum");
  }
  while (b - a > 1e-13 * b) {
    const double m = 0.5 * (a + b);
    const double fm = slope(m);
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  // Deeper wells bind more states; stay on the shallow side.
  return a * (1.0 - 1e-7);
}

}  // namespace oplab::scattering
