#include <benchmark/benchmark.h>

#include <random>

#include "oplab/linalg.hpp"
#include "oplab/scattering/levinson.hpp"
#include "oplab/scattering/smatrix.hpp"
#include "oplab/toeplitz/index.hpp"
#include "oplab/witten/heat_trace.hpp"

namespace {

oplab::HermitianMatrix random_hermitian(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  oplab::DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  }
  return oplab::HermitianMatrix(m + m.adjoint());
}

void BM_HermEig(benchmark::State& state) {
  const auto m = random_hermitian(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(oplab::herm_eig(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermEig)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNCubed)->Unit(benchmark::kMillisecond);

void BM_HeatTraceRhs(benchmark::State& state) {
  const oplab::GridSpec grid(40.0, static_cast<int>(state.range(0)));
  const auto a1 = oplab::witten::discretize_dirac(grid);
  const auto b = oplab::witten::PerturbationProfile::lorentzian(1.0);
  const auto ts = oplab::witten::geometric_schedule(1.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(oplab::witten::heat_trace_rhs(a1, b, ts, 8));
}
BENCHMARK(BM_HeatTraceRhs)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_TransferMatrix(benchmark::State& state) {
  const auto v = oplab::scattering::Potential::square_well(5.0, 1.0);
  const double k = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oplab::scattering::transfer_matrix(v, k));
}
BENCHMARK(BM_TransferMatrix)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_BoundStates(benchmark::State& state) {
  const auto v = oplab::scattering::Potential::square_well(static_cast<double>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(oplab::scattering::bound_states(v));
}
BENCHMARK(BM_BoundStates)->Arg(2)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_HalfShiftExampleFedosov(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto pair = oplab::toeplitz::build_half_shift_example(n);
    benchmark::DoNotOptimize(oplab::toeplitz::fedosov_index(pair, n));
  }
}
BENCHMARK(BM_HalfShiftExampleFedosov)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
