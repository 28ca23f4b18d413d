#include <benchmark/benchmark.h>

#include "sovxxz/harness.hpp"
#include "sovxxz/tq_hom.hpp"
#include "sovxxz/tq_inhom.hpp"

using namespace sovxxz;

namespace {

const std::vector<std::vector<int>> kShapes{{1}, {1, 1}, {1, 2}, {1, 1, 1}, {2, 2}, {1, 1, 1, 1}};

ChainModel shape_model(const benchmark::State& state) {
  return generate_model(17, kShapes[static_cast<std::size_t>(state.range(0))], 0.05);
}

void label(benchmark::State& state, const ChainModel& m) {
  state.SetLabel("dim " + std::to_string(m.hilbert_dim()));
}

void BM_BruteForceSpectrum(benchmark::State& state) {
  ChainModel m = shape_model(state);
  for (auto _ : state) {
    Rng rng(1);
    benchmark::DoNotOptimize(brute_force_spectrum(m, rng));
  }
  label(state, m);
}

void BM_SovBasis(benchmark::State& state) {
  ChainModel m = shape_model(state);
  for (auto _ : state) benchmark::DoNotOptimize(build_sov_basis(m));
  label(state, m);
}

void BM_SolveQInhom(benchmark::State& state) {
  ChainModel m = shape_model(state);
  Rng rng(2);
  auto sp = brute_force_spectrum(m, rng);
  for (auto _ : state)
    for (const auto& e : sp) benchmark::DoNotOptimize(solve_q_inhom_retry(m, e.t, rng));
  label(state, m);
}

void BM_SolveQHom(benchmark::State& state) {
  ChainModel m = shape_model(state);
  Rng rng(3);
  auto sp = brute_force_spectrum(m, rng);
  for (auto _ : state)
    for (const auto& e : sp) benchmark::DoNotOptimize(solve_q_hom(m, e.t, rng));
  label(state, m);
}

void BM_Roots(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  std::vector<cplx> r;
  for (int j = 0; j < degree; ++j) r.push_back(cplx(-1.0 + 2.0 * j / degree, 0.3 * j));
  TrigPoly p = TrigPoly::sinh_product(r);
  for (auto _ : state) benchmark::DoNotOptimize(roots(p));
}

void BM_FullRun(benchmark::State& state) {
  RunConfig c;
  c.model.two_s = kShapes[static_cast<std::size_t>(state.range(0))];
  c.model.xi_seed = 17;
  for (auto _ : state) benchmark::DoNotOptimize(run(c));
}

}  // namespace

BENCHMARK(BM_BruteForceSpectrum)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SovBasis)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolveQInhom)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolveQHom)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Roots)->RangeMultiplier(2)->Range(2, 32)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FullRun)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
