#include <benchmark/benchmark.h>

#include "quopt/formulations.hpp"
#include "quopt/problems.hpp"

using namespace quopt;

namespace {

void BM_ExactSolve(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  IsingPolynomial h(n);
  for (int q = 0; q < n; ++q) {
    h.add_term({q}, 0.25 * (q + 1));
    h.add_term({q, (q + 1) % n}, -0.5);
  }
  for (auto _ : state) {
    auto s = h.exact_solve();
    benchmark::DoNotOptimize(s.ground_energy);
  }
}

void BM_BuildPolynomial(benchmark::State &state) {
  auto kind = static_cast<ProblemKind>(state.range(0));
  ProblemInstance inst = generate_instance(kind, {}, 3);
  for (auto _ : state) {
    BinaryPolynomial p = build_polynomial(inst);
    benchmark::DoNotOptimize(p.terms().size());
  }
}

void BM_BruteForceOptimum(benchmark::State &state) {
  auto kind = static_cast<ProblemKind>(state.range(0));
  ProblemInstance inst = generate_instance(kind, {}, 3);
  for (auto _ : state) {
    auto optima = brute_force_optimum(inst);
    benchmark::DoNotOptimize(optima.size());
  }
}

} // namespace

BENCHMARK(BM_ExactSolve)->DenseRange(8, 16, 2);
BENCHMARK(BM_BuildPolynomial)->DenseRange(0, 11);
BENCHMARK(BM_BruteForceOptimum)->DenseRange(0, 11);

BENCHMARK_MAIN();
