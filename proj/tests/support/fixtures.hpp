// Shared test fixtures: small solved records built through the real stack.

#pragma once

#include "quopt/dataset.hpp"
#include "quopt/formulations.hpp"
#include "quopt/pipeline.hpp"

namespace quopt::testsupport {

struct SolvedFixture {
  ProblemInstance instance;
  IsingPolynomial hamiltonian;
  SpectrumSummary spectrum;
  SolveOutcome outcome;
  OptimizerConfig cfg;
};

/// Deterministically solves one generated instance with QAOA; retries a few
/// seeds so fixtures stay robust to landscape quirks.
inline SolvedFixture solved_qaoa_fixture(ProblemKind kind, std::uint64_t seed,
                                         int layers = 2) {
  SolvedFixture f;
  f.instance = generate_instance(kind, {}, seed);
  f.hamiltonian = binary_to_ising(build_polynomial(f.instance));
  f.spectrum = f.hamiltonian.exact_solve();
  f.cfg.method = Method::QAOA;
  f.cfg.layers = layers;
  f.cfg.max_steps = 400;
  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    f.cfg.seed = mix_seed(seed, attempt);
    Circuit c = build_qaoa(f.hamiltonian, layers);
    f.outcome = optimize_parameters(c, f.hamiltonian, f.spectrum, f.cfg);
    if (f.outcome.converged)
      return f;
  }
  throw DataError("fixture failed to converge: " + to_string(kind));
}

inline DatasetRecord fixture_record(const SolvedFixture &f) {
  return make_record(f.instance, f.hamiltonian, f.spectrum, f.outcome, f.cfg,
                     make_record_id(f.instance, f.cfg));
}

} // namespace quopt::testsupport
