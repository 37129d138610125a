#include <benchmark/benchmark.h>

#include "quopt/ansatz.hpp"
#include "quopt/optimizer.hpp"
#include "quopt/simulator.hpp"

using namespace quopt;

namespace {

IsingPolynomial ring_hamiltonian(int n) {
  IsingPolynomial h(n);
  for (int q = 0; q < n; ++q)
    h.add_term({q, (q + 1) % n}, 0.5);
  return h;
}

void BM_SimulateQaoa(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  IsingPolynomial h = ring_hamiltonian(n);
  Circuit c = build_qaoa(h, 2);
  ParameterBinding b = random_binding(c, 42);
  for (auto _ : state) {
    Statevector sv = simulate(c, b);
    benchmark::DoNotOptimize(sv.amplitudes.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_GradientAll(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  IsingPolynomial h = ring_hamiltonian(n);
  Circuit c = build_qaoa(h, 1);
  ParameterBinding b = random_binding(c, 7);
  for (auto _ : state) {
    auto grads = gradient_all(c, b, h);
    benchmark::DoNotOptimize(grads.data());
  }
}

void BM_Expectation(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  IsingPolynomial h = ring_hamiltonian(n);
  Circuit c(n);
  for (int q = 0; q < n; ++q)
    c.push(GateKind::H, {q});
  Statevector sv = simulate(c);
  for (auto _ : state) {
    double e = expectation(sv, h);
    benchmark::DoNotOptimize(e);
  }
}

} // namespace

BENCHMARK(BM_SimulateQaoa)->DenseRange(4, 14, 2);
BENCHMARK(BM_GradientAll)->DenseRange(4, 10, 2);
BENCHMARK(BM_Expectation)->DenseRange(4, 14, 2);

BENCHMARK_MAIN();
