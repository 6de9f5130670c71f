#pragma once

// Shared tolerances and sign conventions. Every record emitted by the CLI
// echoes the convention strings below.

#include <numbers>
#include <string_view>

namespace oplab::constants {

inline constexpr double kPi = std::numbers::pi;

// --- dense linear algebra -------------------------------------------------
/// max|M - M^H| <= kHermitianTolerance * max|M| for Hermitian-flagged values.
inline constexpr double kHermitianTolerance = 1e-12;
/// max|M - V diag(w) V^H| <= kEigenResidualTolerance * max|M|.
inline constexpr double kEigenResidualTolerance = 1e-10;

// --- Toeplitz ---------------------------------------------------------------
inline constexpr double kSvdKernelTolerance = 1e-7;
inline constexpr double kSymbolVanishingTolerance = 1e-8;
/// Largest accepted phase increment between adjacent samples when unwrapping.
inline constexpr double kUnwrapJumpLimit = kPi / 2;
/// Index sign: index(T_a) = -winding(a).
inline constexpr int kToeplitzIndexSign = -1;

// --- Witten index -------------------------------------------------------------
/// W(A1, A1 + B) = kWittenSign * lim (t/pi)^{1/2} int_1^2 tr(exp(-t A_s^2) B) ds.
inline constexpr double kWittenSign = +1.0;
inline constexpr double kPlateauStep = 0.005;
inline constexpr int kPlateauMinSamples = 5;
inline constexpr double kPlateauMaxUncertainty = 0.02;
inline constexpr double kClosedFormTolerance = 1e-8;
inline constexpr double kThetaLimitTolerance = 1e-6;

// --- scattering ---------------------------------------------------------------
inline constexpr double kUnitarityTolerance = 1e-8;
inline constexpr double kIntegratorDriftLimit = 1e-6;
inline constexpr double kResonanceLow = 0.02;
inline constexpr double kResonanceHigh = 0.1;
inline constexpr double kLevinsonTolerance = 0.05;
inline constexpr double kLimitTolerance = 0.05;
inline constexpr double kKMin = 1e-3;
/// Levinson: N = kLevinsonSign * (delta(inf) - delta(0)) / pi + (1 - M_R(0)) / 2
/// with delta = arg det S / 2.
inline constexpr double kLevinsonSign = -1.0;

// --- convention tags ------------------------------------------------------------
inline constexpr std::string_view kTagToeplitzIndex = "index = dim ker - dim coker = -winding(symbol)";
inline constexpr std::string_view kTagWittenSign =
    "W(A1,A1+B) = +lim (t/pi)^(1/2) int_1^2 tr(exp(-t A_s^2) B) ds = +(1/2pi) int tr Phi";
inline constexpr std::string_view kTagPtfOrientation =
    "ptf_lhs = tr_window(exp(-t D*D) - exp(-t DD*)), D = d/dt + A1 + theta B";
inline constexpr std::string_view kTagSMatrixLayout = "S = [[t, r_minus], [r_plus, t]]";
inline constexpr std::string_view kTagLevinson =
    "delta = arg det S / 2; N = -(delta(inf) - delta(0))/pi + (1 - M_R(0))/2";
inline constexpr std::string_view kTagCorrectedIndex =
    "index(P S sigma* P) = -winding(det S sigma*); W(D,S*DS) = -(1/2pi) Delta arg det S; "
    "W(D,sigma D sigma*) = (1/2pi) int tr(-i sigma' sigma*)";

}  // namespace oplab::constants
