#include "oplab/toeplitz/symbol.hpp"

#include <cmath>
#include <unsupported/Eigen/FFT>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"

namespace oplab::toeplitz {

using constants::kPi;

namespace {

constexpr double kClosureTolerance = 1e-10;

HalfInteger reduce_character(int twice) {
  return HalfInteger::from_twice(((twice % 2) + 2) % 2);
}

std::vector<cplx> circle_loop(const CircleSymbol& s, int samples) {
  std::vector<cplx> loop(static_cast<size_t>(samples) + 1);
  for (int k = 0; k < samples; ++k) loop[static_cast<size_t>(k)] = s(-kPi + 2.0 * kPi * k / samples);
  loop.back() = s(kPi);
  return loop;
}

std::vector<cplx> line_loop(const LineSymbol& s, int samples) {
  std::vector<cplx> loop(static_cast<size_t>(samples) + 1);
  loop.front() = s.limit();
  loop.back() = s.limit();
  for (int k = 1; k < samples; ++k) {
    const double phi = -kPi + 2.0 * kPi * k / samples;
    loop[static_cast<size_t>(k)] = s(std::tan(0.5 * phi));
  }
  return loop;
}

int stable_integer_winding(const std::function<double(int)>& at, int samples) {
  const double coarse = at(samples);
  const double fine = at(2 * samples);
  const long rc = std::lround(coarse);
  const long rf = std::lround(fine);
  if (rc != rf || std::abs(coarse - rc) > 1e-6 || std::abs(fine - rf) > 1e-6) {
    throw InconclusiveError("winding_number: not stable under sample refinement");
  }
  return static_cast<int>(rc);
}

}  // namespace

CircleSymbol::CircleSymbol(Evaluator evaluator, HalfInteger character, int sample_count)
    : evaluator_(std::move(evaluator)), character_(character), sample_count_(sample_count) {
  if (character.twice() != 0 && character.twice() != 1) {
    throw DomainError("CircleSymbol: character must be 0 or 1/2");
  }
  if (sample_count < 8) throw DomainError("CircleSymbol: sample_count must be at least 8");
  const cplx left = evaluator_(-kPi);
  const cplx right = evaluator_(kPi);
  const double scale = std::max(1.0, std::max(std::abs(left), std::abs(right)));
  if (character.is_integer()) {
    if (std::abs(right - left) > kClosureTolerance * scale) {
      throw DomainError("CircleSymbol: character-0 symbol is not periodic");
    }
  } else if (std::abs(right + left) > kClosureTolerance * scale) {
    throw DomainError("CircleSymbol: character-1/2 symbol is not antiperiodic");
  }
}

CircleSymbol CircleSymbol::power(int k, int sample_count) {
  return CircleSymbol([k](double th) { return std::polar(1.0, k * th); }, HalfInteger::from_int(0), sample_count);
}

CircleSymbol CircleSymbol::half_power(int sample_count) {
  return CircleSymbol([](double th) { return std::polar(1.0, 0.5 * th); }, HalfInteger::from_twice(1), sample_count);
}

CircleSymbol CircleSymbol::operator*(const CircleSymbol& rhs) const {
  auto f = evaluator_;
  auto g = rhs.evaluator_;
  return CircleSymbol([f, g](double th) { return f(th) * g(th); },
                      reduce_character(character_.twice() + rhs.character_.twice()),
                      std::max(sample_count_, rhs.sample_count_));
}

std::map<int, cplx> CircleSymbol::fourier_coefficients(double drop_tolerance) const {
  // a(theta) e^{-i c theta} is periodic; its DFT gives the integer modes.
  const int n = sample_count_;
  const double c = character_.value();
  std::vector<cplx> samples(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double th = -kPi + 2.0 * kPi * j / n;
    samples[static_cast<size_t>(j)] = evaluator_(th) * std::polar(1.0, -c * th);
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> spectrum;
  fft.fwd(spectrum, samples);
  std::map<int, cplx> out;
  for (int j = 0; j < n; ++j) {
    const int k = j < n / 2 ? j : j - n;
    // Undo the shift of the sample origin to -pi.
    const cplx ck = spectrum[static_cast<size_t>(j)] / static_cast<double>(n) * std::polar(1.0, k * kPi);
    if (std::abs(ck) >= drop_tolerance) out.emplace(2 * k + character_.twice(), ck);
  }
  return out;
}

LineSymbol::LineSymbol(Evaluator evaluator, cplx limit_at_infinity, int sample_count)
    : evaluator_(std::move(evaluator)), limit_(limit_at_infinity), sample_count_(sample_count) {
  if (sample_count < 8) throw DomainError("LineSymbol: sample_count must be at least 8");
}

LineSymbol LineSymbol::from_function(Evaluator evaluator, int sample_count) {
  constexpr double kFar = 1e9;
  const cplx lo = evaluator(-kFar);
  const cplx hi = evaluator(kFar);
  if (std::abs(lo - hi) > 1e-6 * std::max(1.0, std::abs(lo))) {
    throw DomainError("LineSymbol: limits at -inf and +inf differ");
  }
  return LineSymbol(std::move(evaluator), 0.5 * (lo + hi), sample_count);
}

double winding_of_samples(std::span<const cplx> loop) {
  if (loop.size() < 3) throw DomainError("winding_of_samples: need at least 3 samples");
  const double scale = std::abs(loop.front());
  if (std::abs(loop.back() - loop.front()) > 1e-8 * std::max(1.0, scale)) {
    throw DomainError("winding_of_samples: curve is not closed (discontinuous symbol)");
  }
  double total = 0.0;
  for (size_t i = 0; i < loop.size(); ++i) {
    if (std::abs(loop[i]) < constants::kSymbolVanishingTolerance) {
      throw DomainError("winding_of_samples: symbol vanishes at a sample");
    }
    if (i == 0) continue;
    const double step = std::arg(loop[i] / loop[i - 1]);
    if (std::abs(step) > constants::kUnwrapJumpLimit) {
      throw InconclusiveError("winding_of_samples: argument jump too large, undersampled");
    }
    total += step;
  }
  return total / (2.0 * kPi);
}

int winding_number(const CircleSymbol& symbol) {
  if (!symbol.character().is_integer()) {
    throw DomainError("winding_number: character-1/2 symbol is not a closed loop");
  }
  return stable_integer_winding(
      [&](int n) {
        const auto loop = circle_loop(symbol, n);
        return winding_of_samples(loop);
      },
      symbol.sample_count());
}

int winding_number(const LineSymbol& symbol) {
  return stable_integer_winding(
      [&](int n) {
        const auto loop = line_loop(symbol, n);
        return winding_of_samples(loop);
      },
      symbol.sample_count());
}

}  // namespace oplab::toeplitz
