#include <gtest/gtest.h>

#include <cmath>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"
#include "oplab/scattering/levinson.hpp"
#include "oplab/scattering/sigma.hpp"
#include "oracles.hpp"

namespace {

namespace sc = oplab::scattering;
using oplab::cplx;
using sc::Matrix2c;

constexpr double kPi = oracle::kPi;

double max_abs2(const Matrix2c& m) { return m.cwiseAbs().maxCoeff(); }

double resonance_depth() {
  static const double v = sc::locate_resonance_depth(1.0, 1.5, 3.5);
  return v;
}

TEST(Potential, SquareWellShape) {
  const auto v = sc::Potential::square_well(2.0, 1.0);
  EXPECT_EQ(v(0.3), -2.0);
  EXPECT_EQ(v(1.5), 0.0);
  EXPECT_DOUBLE_EQ(v.support_radius(), 1.0);
  EXPECT_NEAR(v.l1_norm(), 4.0, 1e-6);
  EXPECT_DOUBLE_EQ(v.max_abs(), 2.0);
  EXPECT_TRUE(sc::Potential::free().is_free());
}

TEST(Potential, SupportIsCertified) {
  EXPECT_THROW(sc::Potential([](double x) { return std::exp(-x * x); }, 1.0, {}, "gauss"), oplab::DomainError);
  EXPECT_THROW(sc::Potential::square_well(-1.0, 1.0), oplab::DomainError);
}

TEST(TransferMatrix, FreeIsIdentity) {
  EXPECT_LE(max_abs2(sc::transfer_matrix(sc::Potential::free(), 1.3) - Matrix2c::Identity()), 1e-8);
}

TEST(TransferMatrix, UnitDeterminant) {
  const auto r = sc::transfer_matrix_detailed(sc::Potential::square_well(2.0, 1.0), 1.0);
  EXPECT_LE(std::abs(r.m.determinant() - 1.0), 1e-8);
  EXPECT_LE(r.wronskian_drift, 1e-6);
  EXPECT_GT(r.steps, 0);
}

TEST(TransferMatrix, MatchesPiecewiseMatchingOracle) {
  for (double k : {0.05, 1.0, 7.0}) {
    const auto m = sc::transfer_matrix(sc::Potential::square_well(2.0, 1.0), k);
    const auto ref = oracle::square_well_transfer(2.0, 1.0, k);
    EXPECT_LE(max_abs2(m - ref), 1e-6) << "k=" << k;
  }
}

TEST(TransferMatrix, RejectsNonPositiveK) {
  EXPECT_THROW(sc::transfer_matrix(sc::Potential::free(), 0.0), oplab::DomainError);
}

TEST(TransferMatrix, IntegratorSelfTest) {
  EXPECT_LE(sc::integrator_self_test(50.0, 1.0), 1e-6);
  EXPECT_LE(sc::integrator_step(sc::Potential::square_well(25.0, 1.0), 100.0), 0.01 / 100.0);
}

TEST(ScatteringMatrix, FreeIsIdentity) {
  const auto c = sc::scattering_matrix(sc::Potential::free(), sc::log_grid(1e-3, 1e2, 20));
  for (const auto& s : c.s) EXPECT_LE(max_abs2(s - Matrix2c::Identity()), 1e-6);
}

TEST(ScatteringMatrix, EntriesMatchClosedForm) {
  const auto c = sc::scattering_matrix(sc::Potential::square_well(2.0, 1.0), sc::log_grid(1e-2, 30.0, 40));
  for (size_t i = 0; i < c.k.size(); ++i) {
    const double k = c.k[i];
    const auto& s = c.s[i];
    EXPECT_NEAR(std::norm(s(0, 0)), oracle::square_well_transmission_probability(2.0, 1.0, k), 1e-6);
    EXPECT_LE(std::abs(s(0, 0) - oracle::square_well_t(2.0, 1.0, k)), 1e-6) << "k=" << k;
    EXPECT_LE(std::abs(s(1, 0) - oracle::square_well_r(2.0, 1.0, k)), 1e-6) << "k=" << k;
  }
}

TEST(ScatteringMatrix, UnitarityAndReciprocity) {
  const auto c = sc::scattering_matrix(sc::Potential::square_well(5.0, 1.0), sc::log_grid(1e-3, 100.0, 60));
  EXPECT_LE(c.max_unitarity_residual(), 1e-8);
  for (size_t i = 0; i < c.k.size(); ++i) {
    EXPECT_LE(c.reciprocity_residuals[i], 1e-8);
    EXPECT_NEAR(std::norm(c.s[i](0, 0)) + std::norm(c.s[i](1, 0)), 1.0, 1e-8);
  }
}

TEST(ScatteringMatrix, CoarseGridIsRefined) {
  const auto c = sc::scattering_matrix(sc::Potential::square_well(25.0, 1.0), sc::log_grid(1e-3, 100.0, 6));
  EXPECT_GT(c.k.size(), 6u);
  for (size_t i = 1; i < c.k.size(); ++i) {
    EXPECT_LT(std::abs(std::arg(c.s[i].determinant() / c.s[i - 1].determinant())), kPi / 4);
  }
  EXPECT_THROW(sc::scattering_matrix(sc::Potential::square_well(25.0, 1.0), sc::log_grid(1e-3, 100.0, 6), 8),
               oplab::InconclusiveError);
}

TEST(BoundStates, FreeHasNone) { EXPECT_EQ(sc::bound_states(sc::Potential::free()), 0); }

TEST(BoundStates, MatchTranscendentalOracle) {
  for (double v0 : {0.5, 1.0, 2.0, 5.0, 10.0, 25.0}) {
    const auto spectrum = oracle::square_well_bound_states(v0, 1.0);
    EXPECT_EQ(sc::bound_states(sc::Potential::square_well(v0, 1.0)), spectrum.count()) << "V0=" << v0;
  }
}

TEST(BoundStates, MonotoneInDepth) {
  int previous = 0;
  for (double v0 = 0.5; v0 <= 30.0; v0 += 2.5) {
    const int n = sc::bound_states(sc::Potential::square_well(v0, 1.0));
    EXPECT_GE(n, previous);
    previous = n;
  }
}

TEST(BoundStates, NarrowGridIsRejected) {
  EXPECT_THROW(sc::bound_states(sc::Potential::square_well(2.0, 1.0), oplab::GridSpec(4.0, 800)),
               oplab::DomainError);
}

TEST(PhaseWinding, FreeIsZero) {
  const auto c = sc::scattering_matrix(sc::Potential::free(), sc::default_k_grid(sc::Potential::free()));
  EXPECT_NEAR(sc::phase_winding(c).total, 0.0, 1e-6);
}

TEST(PhaseWinding, SingleBoundStateWindsByMinusPi) {
  const auto v = sc::Potential::square_well(2.0, 1.0);
  ASSERT_EQ(oracle::square_well_bound_states(2.0, 1.0).count(), 1);
  const auto c = sc::scattering_matrix(v, sc::default_k_grid(v));
  EXPECT_NEAR(sc::phase_winding(c).total, -kPi, 0.05 * kPi);
}

TEST(PhaseWinding, StableUnderDoubledSampling) {
  const auto v = sc::Potential::square_well(5.0, 1.0);
  const auto coarse = sc::phase_winding(sc::scattering_matrix(v, sc::log_grid(1e-3, 200.0, 200)));
  const auto fine = sc::phase_winding(sc::scattering_matrix(v, sc::log_grid(1e-3, 200.0, 400)));
  EXPECT_LT(std::abs(coarse.total - fine.total), 1e-3);
}

TEST(Resonance, FreeCurveCountsAsResonant) {
  const auto r = sc::resonance_detect(sc::Potential::free(), sc::default_k_head());
  EXPECT_EQ(r.m_r0, 1);
  EXPECT_NEAR(r.evidence, 1.0, 1e-8);
}

TEST(Resonance, GenericWellIsNotResonant) {
  const auto r = sc::resonance_detect(sc::Potential::square_well(2.0, 1.0), sc::default_k_head());
  EXPECT_EQ(r.m_r0, 0);
  EXPECT_LT(r.evidence, 0.02);
}

TEST(Resonance, LocatedDepthMatchesOracleScan) {
  const double oracle_depth = oracle::square_well_resonance_depth(1.0, 1.5, 3.5);
  EXPECT_NEAR(resonance_depth(), oracle_depth, 1e-5);
  const auto r = sc::resonance_detect(sc::Potential::square_well(resonance_depth(), 1.0), sc::default_k_head());
  EXPECT_EQ(r.m_r0, 1);
  EXPECT_GT(r.evidence, 0.1);
}

TEST(Resonance, GuardBandIsInconclusive) {
  // Detuning whose closed-form |t| fit over the head samples lands mid guard band.
  const auto head = sc::default_k_head();
  auto fit_c0 = [&](double v0) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double k : head) {
      const double y = std::abs(oracle::square_well_t(v0, 1.0, k));
      sx += k;
      sy += y;
      sxx += k * k;
      sxy += k * y;
    }
    const double n = static_cast<double>(head.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return (sy - slope * sx) / n;
  };
  const double v_star = kPi * kPi / 4.0;
  double lo = 1e-8, hi = 1.0;
  for (int it = 0; it < 100; ++it) {
    const double mid = std::sqrt(lo * hi);
    (fit_c0(v_star + mid) > 0.05 ? lo : hi) = mid;
  }
  const double depth = v_star + lo;
  ASSERT_NEAR(fit_c0(depth), 0.05, 0.01);
  EXPECT_THROW(sc::resonance_detect(sc::Potential::square_well(depth, 1.0), head), oplab::InconclusiveError);
}

TEST(Resonance, HeadSamplesMustBeSmall) {
  EXPECT_THROW(sc::resonance_detect(sc::Potential::free(), {0.5, 0.2}), oplab::DomainError);
}

TEST(Levinson, FreePotential) {
  const auto r = sc::levinson_check(sc::Potential::free());
  EXPECT_EQ(r.n_bound, 0);
  EXPECT_NEAR(r.phase_winding, 0.0, 1e-6);
  EXPECT_LE(r.residual, 1e-6);
  EXPECT_TRUE(r.accepted);
}

TEST(Levinson, ModerateWell) {
  const auto r = sc::levinson_check(sc::Potential::square_well(2.0, 1.0));
  EXPECT_EQ(r.n_bound, oracle::square_well_bound_states(2.0, 1.0).count());
  EXPECT_EQ(r.m_r0, 0);
  EXPECT_LE(r.residual, 0.05);
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.convention, std::string(oplab::constants::kTagLevinson));
}

TEST(Levinson, ResonantDepthActivatesHalfBoundTerm) {
  const auto r = sc::levinson_check(sc::Potential::square_well(resonance_depth(), 1.0));
  EXPECT_EQ(r.m_r0, 1);
  EXPECT_EQ(r.n_bound, oracle::square_well_bound_states(resonance_depth(), 1.0).count());
  EXPECT_LE(r.residual, 0.05);
}

TEST(ExpResample, FreeCurveIsConstantIdentity) {
  const auto v = sc::Potential::free();
  const auto line = sc::exp_resample(v, sc::scattering_matrix(v, sc::default_k_grid(v)));
  for (const auto& s : line.s) EXPECT_LE(max_abs2(s - Matrix2c::Identity()), 1e-6);
  EXPECT_LE(max_abs2(line.s_minus_infinity - Matrix2c::Identity()), 1e-12);
}

TEST(ExpResample, GenericZeroEnergyLimitIsAReflection) {
  const auto v = sc::Potential::square_well(2.0, 1.0);
  const auto line = sc::exp_resample(v, sc::scattering_matrix(v, sc::default_k_grid(v)));
  // Unitarily equivalent to +-diag(1, -1): det -1 with eigenvalues +1 and -1.
  const Matrix2c s = line.s_minus_infinity;
  EXPECT_NEAR(std::abs(s.determinant() + 1.0), 0.0, 0.05);
  Eigen::ComplexEigenSolver<Matrix2c> es(s);
  std::vector<double> re = {es.eigenvalues()(0).real(), es.eigenvalues()(1).real()};
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -1.0, 0.05);
  EXPECT_NEAR(re[1], 1.0, 0.05);
  EXPECT_LE(line.minus_snap_distance, 0.05);
  EXPECT_LE(line.plus_residual, oplab::constants::kLimitTolerance);
}

TEST(ExpResample, UniformGridWithContinuousDeterminant) {
  const auto v = sc::Potential::square_well(5.0, 1.0);
  const auto line = sc::exp_resample(v, sc::scattering_matrix(v, sc::default_k_grid(v)));
  ASSERT_GT(line.lambda.size(), 10u);
  const double step = line.lambda[1] - line.lambda[0];
  for (size_t i = 1; i < line.lambda.size(); ++i) {
    EXPECT_NEAR(line.lambda[i] - line.lambda[i - 1], step, 1e-9);
    EXPECT_LT(std::abs(std::arg(line.s[i].determinant() / line.s[i - 1].determinant())), kPi / 4);
  }
}

TEST(Sigma, IdentityGivesTrivialBranch) {
  const auto s = sc::build_sigma(Matrix2c::Identity());
  EXPECT_EQ(s.branch(), sc::SigmaBranch::kTrivial);
  for (double l : {-50.0, 0.0, 3.0}) EXPECT_LE(max_abs2(s(l) - Matrix2c::Identity()), 1e-15);
  EXPECT_EQ(sc::witten_index_sigma(s), 0.0);
}

TEST(Sigma, ParityLimitGivesOneHalf) {
  Matrix2c p = Matrix2c::Identity();
  p(1, 1) = -1.0;
  const auto s = sc::build_sigma(p);
  EXPECT_EQ(s.branch(), sc::SigmaBranch::kAntidiagonalLimit);
  EXPECT_NEAR(sc::witten_index_sigma(s), 0.5, 1e-6);
  EXPECT_LE(max_abs2(s.minus_limit() - p), 1e-8);
  EXPECT_LE(max_abs2(s(1e12) - Matrix2c::Identity()), 1e-8);
}

TEST(Sigma, GeneralUnitaryBranchCancels) {
  Matrix2c r = Matrix2c::Zero();
  r(0, 0) = std::polar(1.0, -kPi / 3);
  r(1, 1) = std::polar(1.0, kPi / 3);
  const auto s = sc::build_sigma(r);
  EXPECT_EQ(s.branch(), sc::SigmaBranch::kGeneralUnitary);
  EXPECT_NEAR(s.theta_angle(), kPi / 3, 1e-12);
  EXPECT_NEAR(sc::witten_index_sigma(s), 0.0, 1e-6);
  EXPECT_LE(max_abs2(s.minus_limit() - r), 1e-8);
}

TEST(Sigma, ValuesAreUnitary) {
  Matrix2c r;
  r << cplx(0.6, 0.0), cplx(0.0, 0.8), cplx(0.0, 0.8), cplx(0.6, 0.0);
  const auto s = sc::build_sigma(r);
  for (double l = -30.0; l <= 30.0; l += 0.5) {
    EXPECT_LE(max_abs2(s(l).adjoint() * s(l) - Matrix2c::Identity()), 1e-12);
  }
  EXPECT_LE(max_abs2(s.minus_limit() - r), 1e-8);
}

TEST(Sigma, NonUnitaryInputIsRejected) {
  EXPECT_THROW(sc::build_sigma(2.0 * Matrix2c::Identity()), oplab::DomainError);
}

TEST(CorrectedIndex, FreeWellWithTrivialSigma) {
  const auto v = sc::Potential::free();
  const auto line = sc::exp_resample(v, sc::scattering_matrix(v, sc::default_k_grid(v)));
  const auto ci = sc::corrected_index(line, sc::build_sigma(line.s_minus_infinity));
  EXPECT_EQ(ci.fredholm_index, 0);
  EXPECT_NEAR(ci.w_s, 0.0, 1e-12);
  EXPECT_EQ(ci.w_sigma, 0.0);
}

TEST(CorrectedIndex, EqualsBoundStateCount) {
  const auto v = sc::Potential::square_well(2.0, 1.0);
  const auto line = sc::exp_resample(v, sc::scattering_matrix(v, sc::default_k_grid(v)));
  const auto ci = sc::corrected_index(line, sc::build_sigma(line.s_minus_infinity));
  EXPECT_EQ(ci.fredholm_index, sc::bound_states(v));
  EXPECT_LE(ci.residual, 0.05);
  EXPECT_NEAR(ci.w_sigma, 0.5, 1e-6);
  EXPECT_NEAR(ci.w_s, 0.5, 0.05);
}

TEST(CorrectedIndex, ResonantDepthSplitsWithoutSigmaContribution) {
  const auto v = sc::Potential::square_well(resonance_depth(), 1.0);
  const auto line = sc::exp_resample(v, sc::scattering_matrix(v, sc::default_k_grid(v)));
  const auto sigma = sc::build_sigma(line.s_minus_infinity);
  const auto ci = sc::corrected_index(line, sigma);
  EXPECT_EQ(ci.fredholm_index, sc::bound_states(v));
  EXPECT_NEAR(ci.w_sigma, 0.0, 1e-6);
  EXPECT_LE(ci.residual, 0.05);
}

TEST(CorrectedIndex, MismatchedSigmaIsRejected) {
  const auto v = sc::Potential::square_well(2.0, 1.0);
  const auto line = sc::exp_resample(v, sc::scattering_matrix(v, sc::default_k_grid(v)));
  EXPECT_THROW(sc::corrected_index(line, sc::build_sigma(Matrix2c::Identity())), oplab::DomainError);
}

}  // namespace
