/**
 * @file optimizer.hpp
 * @brief Classical outer loops: gradient-descent parameter training for
 *        QAOA/VQE circuits and the gradient-grown adaptive VQE.
 *
 * Training stops as soon as the most probable basis state is an exact
 * ground state of the target Hamiltonian; the probability must also exceed
 * the uniform baseline 1/2^n by a relative margin of 1e-9 so that an
 * untouched uniform superposition never counts as converged.
 */

#pragma once

#include <optional>

#include "quopt/ansatz.hpp"
#include "quopt/simulator.hpp"

namespace quopt {

enum class Method { QAOA, VQE, AdaptiveVQE };

std::string to_string(Method method);
Method method_from_string(const std::string &name);

struct OptimizerConfig {
  Method method = Method::QAOA;
  int max_steps = 500;       // gradient-descent budget per training run
  double learning_rate = 0.05;
  int layers = 1;            // 1..4
  int ansatz_id = 1;         // VQE only
  int adaptive_max_gates = 30;
  std::uint64_t seed = 0;
  int top_states = 5;        // entries kept in SolveOutcome::top_states

  void check() const;
};

struct SolveOutcome {
  Circuit circuit;
  ParameterBinding binding;
  int steps_taken = 0;
  bool converged = false;
  /// Adaptive VQE only: every pool candidate's gradient vanished before
  /// convergence, so the circuit could not grow further.
  bool stalled = false;
  /// (bitstring, probability) sorted by descending probability, ties by
  /// ascending basis index.
  std::vector<std::pair<std::string, double>> top_states;
  /// Adaptive VQE only: circuit plus trained binding after each append.
  std::vector<std::pair<Circuit, ParameterBinding>> intermediate_circuits;
};

/// Uniform random binding in [0, 2*pi) per parameter, deterministic per seed.
ParameterBinding random_binding(const Circuit &circuit, std::uint64_t seed);

/**
 * Plain gradient descent on the expectation value using parameter-shift
 * gradients. Convergence is tested before the first step and after every
 * step; an exhausted step budget yields converged = false. The initial
 * binding defaults to random_binding(circuit, cfg.seed).
 */
SolveOutcome optimize_parameters(const Circuit &circuit,
                                 const IsingPolynomial &h,
                                 const SpectrumSummary &spectrum,
                                 const OptimizerConfig &cfg,
                                 std::optional<ParameterBinding> initial = {});

/**
 * Grows a circuit from the uniform superposition: each round appends the
 * pool candidate with the largest |gradient| (ties to the lowest pool
 * index) with a fresh parameter at 0, then retrains all parameters. Stops
 * on convergence, on cfg.adaptive_max_gates appends, or when every
 * candidate gradient falls below 1e-10 (stall).
 */
SolveOutcome adaptive_vqe(const IsingPolynomial &h,
                          const SpectrumSummary &spectrum,
                          const OptimizerConfig &cfg);

} // namespace quopt
