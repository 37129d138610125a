#include <benchmark/benchmark.h>

#include "quopt/ansatz.hpp"
#include "quopt/optimizer.hpp"
#include "quopt/qasm3.hpp"

using namespace quopt;

namespace {

std::string sample_document(int n, int layers) {
  IsingPolynomial h(n);
  for (int q = 0; q + 1 < n; ++q)
    h.add_term({q, q + 1}, 0.5);
  Circuit c = build_qaoa(h, layers);
  return qasm3::emit(c, random_binding(c, 9));
}

void BM_Emit(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  IsingPolynomial h(n);
  for (int q = 0; q + 1 < n; ++q)
    h.add_term({q, q + 1}, 0.5);
  Circuit c = build_qaoa(h, 2);
  ParameterBinding b = random_binding(c, 1);
  for (auto _ : state) {
    std::string text = qasm3::emit(c, b);
    benchmark::DoNotOptimize(text.data());
  }
}

void BM_Parse(benchmark::State &state) {
  std::string doc = sample_document(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    auto parsed = qasm3::parse(doc);
    benchmark::DoNotOptimize(parsed.valid());
  }
}

} // namespace

BENCHMARK(BM_Emit)->DenseRange(4, 12, 4);
BENCHMARK(BM_Parse)->DenseRange(4, 12, 4);

BENCHMARK_MAIN();
