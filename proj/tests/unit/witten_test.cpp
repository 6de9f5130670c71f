#include <gtest/gtest.h>

#include <cmath>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"
#include "oplab/witten/diagnostics.hpp"
#include "oplab/witten/heat_trace.hpp"
#include "oplab/witten/suspension.hpp"
#include "oracles.hpp"

namespace {

namespace wt = oplab::witten;
using oplab::cplx;
using oplab::DenseMatrix;
using oplab::GridSpec;

const GridSpec kSmall(40.0, 256);

TEST(DiscretizeDirac, ConstantsAreInTheKernel) {
  const GridSpec g(10.0, 64);
  const auto a = wt::discretize_dirac(g);
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(64);
  EXPECT_LE((a.matrix() * ones).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(a.hermitian());
}

TEST(DiscretizeDirac, LowestPlaneWaveIsAnEigenvector) {
  const GridSpec g(10.0, 64);
  const auto a = wt::discretize_dirac(g);
  Eigen::VectorXcd v(64);
  const double k = oracle::kPi / g.half_width();
  for (int j = 0; j < 64; ++j) v(j) = std::polar(1.0, k * g.node(j));
  EXPECT_LE((a.matrix() * v - k * v).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DiscretizeDirac, SpectrumIsTheScaledIntegerFrequencies) {
  const GridSpec g(8.0, 32);
  const auto es = oplab::herm_eig(wt::discretize_dirac(g).as_hermitian());
  for (int i = 0; i < 32; ++i) EXPECT_NEAR(es.values(i), (i - 16) * oracle::kPi / 8.0, 1e-10);
}

TEST(DiscretizeDirac, MultiComponentIsBlockDiagonalCopy) {
  const GridSpec g(7.0, 16);
  const auto a1 = wt::discretize_dirac(g);
  const auto a2 = wt::discretize_dirac(g, 2);
  ASSERT_EQ(a2.matrix().rows(), 32);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      EXPECT_EQ(a2.matrix()(2 * i, 2 * j), a1.matrix()(i, j));
      EXPECT_EQ(a2.matrix()(2 * i + 1, 2 * j + 1), a1.matrix()(i, j));
      EXPECT_EQ(a2.matrix()(2 * i, 2 * j + 1), cplx(0.0));
    }
  }
}

TEST(PerturbationProfile, LorentzianCertificateAndValues) {
  const auto b = wt::PerturbationProfile::lorentzian(1.5);
  ASSERT_TRUE(b.decay_certificate().has_value());
  EXPECT_GE(*b.decay_certificate(), 1.5);
  EXPECT_NEAR(b.trace_at(2.0), 1.5 / 5.0, 1e-15);
  EXPECT_FALSE(wt::PerturbationProfile::constant(1.0).decay_certificate().has_value());
  EXPECT_TRUE(wt::PerturbationProfile::zero().is_zero());
}

TEST(PerturbationProfile, RejectsNonHermitianValues) {
  auto f = [](double x) {
    DenseMatrix m = DenseMatrix::Zero(2, 2);
    m(0, 1) = 1.0 / (1.0 + x * x);
    return m;
  };
  EXPECT_THROW(wt::PerturbationProfile(f, 2, 1.0, "bad"), oplab::DomainError);
}

TEST(ThetaProfile, AdmissibleProfilesPassOnWideGrid) {
  const GridSpec t(15.0, 48);
  EXPECT_NO_THROW(wt::ThetaProfile::logistic().check_on(t));
  EXPECT_NO_THROW(wt::ThetaProfile::gudermannian().check_on(t));
  EXPECT_THROW(wt::ThetaProfile::logistic().check_on(GridSpec(3.0, 16)), oplab::DomainError);
  const wt::ThetaProfile bump([](double s) { return std::exp(-s * s); }, "bump");
  EXPECT_THROW(bump.check_on(t), oplab::DomainError);
}

TEST(HeatTraceRhs, ZeroPerturbationGivesExactZero) {
  const auto a = wt::discretize_dirac(kSmall);
  EXPECT_EQ(wt::heat_trace_rhs(a, wt::PerturbationProfile::zero(), 3.0), 0.0);
}

TEST(HeatTraceRhs, LargeTimeApproachesOneHalfOnTheReferenceGrid) {
  const GridSpec g(40.0, 1024);
  const double v = wt::heat_trace_rhs(wt::discretize_dirac(g), wt::PerturbationProfile::lorentzian(1.0), 16.0);
  EXPECT_NEAR(v, 0.5, 0.02);
}

TEST(HeatTraceRhs, SNodeRefinementIsConverged) {
  const auto a = wt::discretize_dirac(kSmall);
  const auto b = wt::PerturbationProfile::lorentzian(1.0);
  EXPECT_LE(std::abs(wt::heat_trace_rhs(a, b, 4.0, 8) - wt::heat_trace_rhs(a, b, 4.0, 16)), 1e-6);
}

TEST(HeatTraceRhs, RejectsBadArguments) {
  const auto a = wt::discretize_dirac(kSmall);
  const auto b = wt::PerturbationProfile::lorentzian(1.0);
  EXPECT_THROW(wt::heat_trace_rhs(a, b, -1.0), oplab::DomainError);
  EXPECT_THROW(wt::heat_trace_rhs(a, b, 1.0, 1), oplab::DomainError);
}

TEST(HeatTraceRhs, SignIsCalibratedPositiveForPositiveProfile) {
  const auto v = wt::heat_trace_rhs(wt::discretize_dirac(kSmall), wt::PerturbationProfile::lorentzian(0.4), 2.0);
  EXPECT_GT(v, 0.0);
  EXPECT_EQ(oplab::constants::kWittenSign, 1.0);
}

TEST(WittenEstimate, UnitLorentzianGivesOneHalf) {
  const auto e = wt::witten_index_estimate(wt::discretize_dirac(kSmall), wt::PerturbationProfile::lorentzian(1.0),
                                           wt::geometric_schedule());
  EXPECT_NEAR(e.plateau_value, 0.5, 0.02);
  EXPECT_GE(e.t_samples.size(), 8u);
  EXPECT_LE(e.plateau_window.second, e.ceiling);
}

TEST(WittenEstimate, ScalesLinearlyWithMu) {
  const auto e = wt::witten_index_estimate(wt::discretize_dirac(kSmall), wt::PerturbationProfile::lorentzian(1.6),
                                           wt::geometric_schedule());
  EXPECT_NEAR(e.plateau_value, 0.8, 0.02);
}

TEST(WittenEstimate, ZeroProfile) {
  const auto e = wt::witten_index_estimate(wt::discretize_dirac(kSmall), wt::PerturbationProfile::zero(),
                                           wt::geometric_schedule());
  EXPECT_LE(std::abs(e.plateau_value), 1e-10);
}

TEST(WittenEstimate, ScheduleValidation) {
  const auto a = wt::discretize_dirac(kSmall);
  const auto b = wt::PerturbationProfile::lorentzian(1.0);
  EXPECT_THROW(wt::witten_index_estimate(a, b, wt::geometric_schedule(1.0, 6)), oplab::DomainError);
  std::vector<double> unsorted = wt::geometric_schedule();
  std::swap(unsorted[2], unsorted[3]);
  EXPECT_THROW(wt::witten_index_estimate(a, b, unsorted), oplab::DomainError);
}

TEST(DetectPlateau, PicksLongestFlatRunBelowCeiling) {
  const std::vector<double> t = {1, 2, 4, 8, 16, 32, 64, 128, 256};
  const std::vector<double> v = {0.1, 0.3, 0.500, 0.501, 0.502, 0.501, 0.500, 0.9, 0.9};
  const auto e = wt::detect_plateau(t, v, 100.0);
  EXPECT_DOUBLE_EQ(e.plateau_window.first, 4.0);
  EXPECT_DOUBLE_EQ(e.plateau_window.second, 64.0);
  EXPECT_NEAR(e.plateau_value, 0.5008, 1e-12);
  EXPECT_NEAR(e.uncertainty, 0.0012, 1e-12);
}

TEST(DetectPlateau, MissingPlateauCarriesTheCurve) {
  const std::vector<double> t = {1, 2, 4, 8, 16, 32, 64, 128};
  const std::vector<double> v = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  try {
    wt::detect_plateau(t, v, 1000.0);
    FAIL() << "expected PlateauNotFound";
  } catch (const wt::PlateauNotFound& e) {
    EXPECT_EQ(e.curve().rhs_values, v);
    EXPECT_EQ(e.diagnostic(), 8);
  }
}

TEST(DetectPlateau, CeilingExcludesLateSamples) {
  const std::vector<double> t = {1, 2, 4, 8, 16, 32, 64, 128};
  const std::vector<double> v(8, 0.25);
  EXPECT_THROW(wt::detect_plateau(t, v, 10.0), wt::PlateauNotFound);
  EXPECT_NEAR(wt::validity_ceiling(GridSpec(40.0, 1024)), std::pow(40.0 / oracle::kPi, 2) / 4.0, 1e-12);
}

TEST(ClosedForm, LorentzianGivesHalfTimesMu) {
  EXPECT_NEAR(wt::witten_index_closed_form(wt::PerturbationProfile::lorentzian(1.0)), 0.5, 1e-8);
  EXPECT_NEAR(wt::witten_index_closed_form(wt::PerturbationProfile::lorentzian(0.3)), 0.15, 1e-8);
  EXPECT_NEAR(wt::witten_index_closed_form(wt::PerturbationProfile::lorentzian(2.7)), 1.35, 1e-8);
  EXPECT_EQ(wt::witten_index_closed_form(wt::PerturbationProfile::zero()), 0.0);
}

TEST(ClosedForm, MissingDecayIsInconclusive) {
  EXPECT_THROW(wt::witten_index_closed_form(wt::PerturbationProfile::constant(1.0)), oplab::InconclusiveError);
}

TEST(ClosedForm, MatrixProfileUsesTheTrace) {
  auto f = [](double x) {
    DenseMatrix m(2, 2);
    const double g = 1.0 / (1.0 + x * x);
    m << g, cplx(0.0, 0.3 * g), cplx(0.0, -0.3 * g), 2.0 * g;
    return m;
  };
  const wt::PerturbationProfile b(f, 2, 1.0, "matrix");
  EXPECT_NEAR(wt::witten_index_closed_form(b), 1.5, 1e-8);
}

TEST(Composition, ClosedFormIsExactlyAdditive) {
  const auto b1 = wt::PerturbationProfile::lorentzian(0.7);
  const auto b2 = wt::PerturbationProfile::scalar([](double x) { return std::exp(-x * x); }, 0.9, "gauss");
  const double lhs = wt::witten_index_closed_form(b1) + wt::witten_index_closed_form(b2);
  EXPECT_NEAR(lhs, wt::witten_index_closed_form(b1 + b2), 1e-12);
}

TEST(Composition, HeatEstimatesCompose) {
  const auto rep = wt::check_composition(wt::discretize_dirac(kSmall), wt::PerturbationProfile::lorentzian(0.7),
                                         wt::PerturbationProfile::lorentzian(0.9), wt::geometric_schedule());
  EXPECT_LE(rep.closed_form_residual, 1e-12);
  EXPECT_LE(rep.heat_residual, 0.02);
  EXPECT_NEAR(rep.w13.plateau_value, 0.8, 0.02);
}

TEST(PathSplitting, TrivialSecondLegCoincides) {
  const auto r = wt::path_splitting_check(wt::discretize_dirac(kSmall), wt::PerturbationProfile::lorentzian(0.7),
                                          wt::PerturbationProfile::zero(), 2.0);
  EXPECT_LE(r.residual, 1e-9);
}

TEST(PathSplitting, DefaultProfilesAgreeAndRefine) {
  const auto a = wt::discretize_dirac(kSmall);
  const auto b1 = wt::PerturbationProfile::lorentzian(0.7);
  const auto b2 = wt::PerturbationProfile::lorentzian(0.9);
  const auto r8 = wt::path_splitting_check(a, b1, b2, 2.0, 8);
  EXPECT_LE(r8.residual, 1e-3 * std::max(std::abs(r8.direct), std::abs(r8.split)));
  const auto r2 = wt::path_splitting_check(a, b1, b2, 2.0, 2);
  const auto r4 = wt::path_splitting_check(a, b1, b2, 2.0, 4);
  EXPECT_LT(r4.residual, r2.residual);
}

TEST(Suspension, CommutingCaseIsNormal) {
  const GridSpec tg(15.0, 32), xg(7.5, 16);
  const auto d = wt::build_suspension(wt::discretize_dirac(xg), wt::PerturbationProfile::zero(),
                                      wt::ThetaProfile::logistic(), tg, xg);
  EXPECT_LE(d.normality_defect(), 1e-8);
  EXPECT_LE(std::abs(wt::ptf_lhs(d, 1.0)), 1e-9);
}

TEST(Suspension, PerturbedOperatorIsNotNormal) {
  const GridSpec tg(15.0, 32), xg(7.5, 16);
  const auto d = wt::build_suspension(wt::discretize_dirac(xg), wt::PerturbationProfile::lorentzian(1.0),
                                      wt::ThetaProfile::logistic(), tg, xg);
  EXPECT_GT(d.normality_defect(), 0.01);
  EXPECT_LE(d.adjoint_mismatch(), 1e-10);
  EXPECT_EQ(d.matrix().rows(), 512);
  EXPECT_EQ(d.theta_samples().size(), 32u);
}

TEST(Suspension, NarrowTimeGridViolatesThetaLimits) {
  const GridSpec tg(3.0, 16), xg(7.5, 16);
  EXPECT_THROW(wt::build_suspension(wt::discretize_dirac(xg), wt::PerturbationProfile::lorentzian(1.0),
                                    wt::ThetaProfile::logistic(), tg, xg),
               oplab::DomainError);
}

TEST(Suspension, MismatchedSpatialGridIsRejected) {
  const GridSpec tg(15.0, 32), xg(7.5, 16);
  EXPECT_THROW(wt::build_suspension(wt::discretize_dirac(GridSpec(7.5, 32)), wt::PerturbationProfile::lorentzian(1.0),
                                    wt::ThetaProfile::logistic(), tg, xg),
               oplab::DomainError);
}

TEST(Suspension, CentralWindowCoversHalfTheTimeGrid) {
  const GridSpec tg(15.0, 32), xg(7.5, 16);
  const auto d = wt::build_suspension(wt::discretize_dirac(xg), wt::PerturbationProfile::lorentzian(1.0),
                                      wt::ThetaProfile::logistic(), tg, xg);
  const auto rows = d.central_window();
  EXPECT_EQ(rows.size(), 16u * 17u);
}

TEST(TraceClassDiagnostic, ZeroPerturbation) {
  const auto r = wt::relative_trace_class_diagnostic(wt::discretize_dirac(GridSpec(20.0, 64)),
                                                     wt::PerturbationProfile::zero(), 1);
  for (double s : r.singular_values) EXPECT_EQ(s, 0.0);
}

TEST(TraceClassDiagnostic, LorentzianIsStableUnderRefinement) {
  const auto r = wt::relative_trace_class_diagnostic(wt::discretize_dirac(GridSpec(40.0, 512)),
                                                     wt::PerturbationProfile::lorentzian(1.0), 1, 0.02);
  EXPECT_TRUE(r.stable_under_refinement);
  EXPECT_NEAR(r.total_refined, r.total_base, 0.02 * r.total_base);
  EXPECT_TRUE(r.plausibly_trace_class);
}

TEST(TraceClassDiagnostic, ConstantProfileGrowsWithTheDomain) {
  const auto r = wt::relative_trace_class_diagnostic(wt::discretize_dirac(GridSpec(20.0, 64)),
                                                     wt::PerturbationProfile::constant(1.0), 0);
  EXPECT_FALSE(r.plausibly_trace_class);
  EXPECT_FALSE(r.stable_under_extension);
  EXPECT_NEAR(r.total_extended / r.total_base, 2.0, 0.1);
  EXPECT_GT(r.total_refined, r.total_base);
}

}  // namespace
