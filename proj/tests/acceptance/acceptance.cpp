// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oplab/cli/config.hpp"
#include "oplab/cli/run.hpp"
#include "oplab/linalg.hpp"
#include "oplab/scattering/levinson.hpp"
#include "oplab/scattering/sigma.hpp"
#include "oplab/toeplitz/index.hpp"
#include "oplab/toeplitz/symbol.hpp"
#include "oracles.hpp"

namespace {

namespace cli = oplab::cli;
namespace sc = oplab::scattering;
namespace tp = oplab::toeplitz;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cli::RunConfig config(const std::string& command) {
  cli::RunConfig c;
  c.command = command;
  return c;
}

Verdict criterion1() {
  Verdict v;
  auto c = config("toeplitz-example");
  c.n = 64;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = cli::run(c);
  const double dt = seconds_since(t0);
  v.require(r.exit_code == 0, "exit code 0");
  if (r.exit_code != 0) {
    v.detail << " " << r.message;
    return v;
  }
  const double gap = r.residual_value("index_plus_one");
  v.detail << "index " << r.scalar_value("index") << ", |value + 1| = " << gap << ", defect deviations "
           << r.residual_value("defect_left_vs_minus_e0e0") << "/" << r.residual_value("defect_right_vs_zero")
           << ", " << dt << " s";
  v.require(r.scalar_value("index") == -1.0, "index -1");
  v.require(gap <= 1e-10, "|value + 1| <= 1e-10");
  v.require(r.residual_value("defect_left_vs_minus_e0e0") == 0.0, "left defect exact");
  v.require(r.residual_value("defect_right_vs_zero") == 0.0, "right defect exact");
  v.require(dt < 1.0, "runtime < 1 s");
  return v;
}

Verdict criterion2() {
  Verdict v;
  for (double mu : {0.5, 1.0, 1.7}) {
    auto c = config("witten-estimate");
    c.mu = mu;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = cli::run(c);
    const double dt = seconds_since(t0);
    if (r.exit_code != 0 && r.exit_code != 1) {
      v.require(false, "mu " + std::to_string(mu) + ": " + r.message);
      continue;
    }
    const double plateau = r.scalar_value("plateau");
    v.detail << "mu " << mu << ": plateau " << plateau << " (target " << mu / 2 << ", " << dt << " s); ";
    v.require(std::abs(plateau - mu / 2) <= 0.02, "plateau within 0.02 of mu/2");
    v.require(dt < 60.0, "runtime < 1 min per mu");
  }
  return v;
}

Verdict criterion3() {
  Verdict v;
  auto c = config("ptf-check");
  c.nt = 48;
  c.nx = 48;
  c.ptf_t = {0.5, 1.0, 2.0};
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = cli::run(c);
  const double dt = seconds_since(t0);
  if (r.curves.empty()) {
    v.require(false, r.message);
    return v;
  }
  const auto& curve = r.curves.front();
  const auto& rhs = curve.columns.at(0).second;
  const auto& lhs1 = curve.columns.at(1).second;
  const auto& lhs2 = curve.columns.at(2).second;
  for (size_t i = 0; i < curve.x.size(); ++i) {
    const double bound = 0.1 * std::max(std::abs(rhs[i].real()), 0.1);
    const double gap = std::abs(lhs1[i].real() - rhs[i].real());
    const double theta_rel = std::abs(lhs1[i].real() - lhs2[i].real()) / std::abs(lhs1[i].real());
    v.detail << "t " << curve.x[i] << ": |lhs - rhs| " << gap << " (bound " << bound << "), theta spread "
             << 100.0 * theta_rel << "%; ";
    v.require(gap <= bound, "trace formula at t = " + std::to_string(curve.x[i]));
    v.require(theta_rel <= 0.02, "theta independence at t = " + std::to_string(curve.x[i]));
  }
  v.detail << dt << " s";
  v.require(dt < 300.0, "runtime < 5 min");
  return v;
}

Verdict criterion4() {
  Verdict v;
  auto c = config("compose-check");
  c.mu1 = 0.7;
  c.mu2 = 0.9;
  c.split_t = 2.0;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = cli::run(c);
  const double dt = seconds_since(t0);
  if (r.exit_code != 0 && r.exit_code != 1) {
    v.require(false, r.message);
    return v;
  }
  const double closed = r.residual_value("closed_form_composition");
  const double heat = r.residual_value("heat_composition");
  const double split = r.residual_value("path_splitting_relative");
  v.detail << "closed-form residual " << closed << ", heat residual " << heat << ", path-splitting relative "
           << split << ", " << dt << " s";
  v.require(closed <= 1e-12, "closed-form residual <= 1e-12");
  v.require(heat <= 0.02, "heat residual <= 0.02");
  v.require(split <= 1e-3, "path splitting <= 1e-3 of term magnitude");
  v.require(dt < 180.0, "runtime < 3 min");
  return v;
}

const std::vector<double> kDepths = {0.5, 1.0, 2.0, 5.0, 10.0, 25.0};

struct WellRun {
  double depth = 0.0;
  sc::LevinsonReport report;
  int oracle_count = 0;
};

std::vector<sc::ScatteringCurve> g_curves;

Verdict criterion5(double& resonance_depth) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  for (double depth : kDepths) {
    const auto well = sc::Potential::square_well(depth, 1.0);
    const auto rep = sc::levinson_check(well);
    const int oracle_n = oracle::square_well_bound_states(depth, 1.0).count();
    g_curves.push_back(rep.curve);
    v.detail << "V0 " << depth << ": N " << rep.n_bound << "/" << oracle_n << " res " << rep.residual << "; ";
    v.require(rep.n_bound == oracle_n, "bound states match oracle at V0 = " + std::to_string(depth));
    v.require(rep.residual <= 0.05, "Levinson residual at V0 = " + std::to_string(depth));
    v.require(rep.m_r0 == 0, "no resonance flag at V0 = " + std::to_string(depth));
  }
  resonance_depth = sc::locate_resonance_depth(1.0, 1.5, 3.5);
  const auto rep = sc::levinson_check(sc::Potential::square_well(resonance_depth, 1.0));
  g_curves.push_back(rep.curve);
  v.detail << "resonance V0* " << resonance_depth << ": M_R(0) " << rep.m_r0 << " res " << rep.residual << "; ";
  v.require(rep.m_r0 == 1, "M_R(0) = 1 at the resonance depth");
  v.require(rep.residual <= 0.05, "Levinson residual at the resonance depth");
  const double dt = seconds_since(t0);
  v.detail << dt << " s";
  v.require(dt < 120.0, "runtime < 2 min");
  return v;
}

Verdict criterion6(double resonance_depth) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> depths = kDepths;
  depths.push_back(resonance_depth);
  for (double depth : depths) {
    const auto well = sc::Potential::square_well(depth, 1.0);
    const auto curve = sc::scattering_matrix(well, sc::default_k_grid(well));
    g_curves.push_back(curve);
    const auto line = sc::exp_resample(well, curve);
    const auto ci = sc::corrected_index(line, sc::build_sigma(line.s_minus_infinity));
    const int n = sc::bound_states(well);
    v.detail << "V0 " << depth << ": index " << ci.fredholm_index << "/" << n << " W_S " << ci.w_s << " W_sigma "
             << ci.w_sigma << "; ";
    v.require(ci.fredholm_index == n, "index equals bound states at V0 = " + std::to_string(depth));
    v.require(ci.residual <= 0.05, "decomposition residual at V0 = " + std::to_string(depth));
  }
  sc::Matrix2c parity = sc::Matrix2c::Identity();
  parity(1, 1) = -1.0;
  sc::Matrix2c rotation = sc::Matrix2c::Zero();
  rotation(0, 0) = std::polar(1.0, -oracle::kPi / 3);
  rotation(1, 1) = std::polar(1.0, oracle::kPi / 3);
  const std::vector<std::pair<sc::Matrix2c, double>> branches = {
      {sc::Matrix2c::Identity(), 0.0}, {parity, 0.5}, {rotation, 0.0}};
  for (const auto& [limit, expected] : branches) {
    const auto sigma = sc::build_sigma(limit);
    const double w = sc::witten_index_sigma(sigma);
    v.detail << sc::to_string(sigma.branch()) << " W " << w << "; ";
    v.require(std::abs(w - expected) <= 1e-6, "sigma branch " + sc::to_string(sigma.branch()));
  }
  const double dt = seconds_since(t0);
  v.detail << dt << " s";
  v.require(dt < 120.0, "runtime < 2 min");
  return v;
}

Verdict criterion7() {
  Verdict v;
  std::mt19937_64 rng(20261016);

  double worst_unitarity = 0.0;
  for (const auto& c : g_curves) worst_unitarity = std::max(worst_unitarity, c.max_unitarity_residual());
  v.detail << "unitarity " << worst_unitarity << " over " << g_curves.size() << " curves; ";
  v.require(!g_curves.empty() && worst_unitarity <= 1e-8, "unitarity <= 1e-8");

  double worst_semigroup = 0.0;
  for (int c = 0; c < 10; ++c) {
    const int n = 5 + 5 * c;
    const oplab::HermitianMatrix m(oracle::random_hermitian(n, rng) / std::sqrt(static_cast<double>(n)));
    const auto es = oplab::herm_eig(m);
    const double t1 = 0.1 * (c + 1), t2 = 0.37;
    const auto full = oplab::heat_operator(es, t1 + t2);
    const double err = oplab::max_abs(oplab::heat_operator(es, t1) * oplab::heat_operator(es, t2) - full);
    worst_semigroup = std::max(worst_semigroup, err / oplab::max_abs(full));
  }
  v.detail << "semigroup " << worst_semigroup << "; ";
  v.require(worst_semigroup <= 1e-8, "semigroup <= 1e-8 relative");

  double worst_commutator = 0.0;
  for (int n : {3, 17, 64}) {
    const auto a = oracle::random_matrix(n, n, rng);
    const auto b = oracle::random_matrix(n, n, rng);
    worst_commutator = std::max(worst_commutator, std::abs(oplab::trace(a * b - b * a)));
  }
  v.detail << "commutator trace " << worst_commutator << "; ";
  v.require(worst_commutator <= 1e-10 * 64, "trace of commutator vanishes");

  bool refinement_ok = true;
  bool agreement_ok = true;
  int corpus = 0;
  for (int k = -3; k <= 3; ++k) {
    for (double eps : {0.0, 0.3, 0.6}) {
      const tp::CircleSymbol a(
          [k, eps](double th) { return std::polar(1.0, k * th) * (1.0 + eps * std::polar(1.0, 2.0 * th)); },
          tp::HalfInteger::from_int(0));
      const int w = tp::winding_number(a);
      for (int n : {512, 2048}) {
        std::vector<oplab::cplx> loop;
        for (int j = 0; j <= n; ++j) loop.push_back(a(-oracle::kPi + 2 * oracle::kPi * j / n));
        refinement_ok &= std::abs(tp::winding_of_samples(loop) - w) < 1e-9;
      }
      const auto pair = tp::classical_toeplitz(a, tp::CircleSymbol::power(-k), 96);
      agreement_ok &= tp::svd_index(pair.t, 128, 16, 1e-7).index() == -w && w == k;
      ++corpus;
    }
  }
  v.detail << "winding refinement " << (refinement_ok ? "stable" : "unstable") << ", SVD/winding "
           << (agreement_ok ? "agree" : "disagree") << " on " << corpus << " symbols";
  v.require(refinement_ok, "winding refinement stability");
  v.require(agreement_ok, "SVD index equals -winding");
  return v;
}

void report(int id, const std::function<Verdict()>& fn, bool& all) {
  Verdict v;
  try {
    v = fn();
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  all &= v.pass;
  std::printf("criterion %d: %s  %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  bool all = true;
  double resonance_depth = 0.0;
  report(1, criterion1, all);
  report(2, criterion2, all);
  report(3, criterion3, all);
  report(4, criterion4, all);
  report(5, [&] { return criterion5(resonance_depth); }, all);
  report(6, [&] { return criterion6(resonance_depth); }, all);
  report(7, criterion7, all);
  return all ? 0 : 1;
}
