/**
 * @file simulator.hpp
 * @brief Exact statevector simulation, measurement probabilities, diagonal
 *        expectation values, and parameter-shift gradients.
 *
 * Amplitudes are stored little-endian (qubit 0 = least significant index
 * bit); rendered bitstrings flip to most-significant-qubit-first via
 * format_bits. Everything is double precision.
 */

#pragma once

#include <complex>
#include <map>
#include <vector>

#include "quopt/circuit.hpp"
#include "quopt/polynomial.hpp"

namespace quopt {

struct Statevector {
  int qubit_count = 0;
  std::vector<std::complex<double>> amplitudes;

  double norm_squared() const;
};

/// Measurement distribution keyed by rendered bitstring.
using Distribution = std::map<std::string, double>;

/// Applies the circuit to |0...0> under `binding`. All symbols must be
/// bound (BindingError otherwise); at most 20 qubits (CapacityError).
Statevector simulate(const Circuit &circuit, const ParameterBinding &binding = {});

/// |amplitude|^2 per basis state; entries below 1e-12 are pruned.
Distribution probabilities(const Statevector &state);

/// Probability-weighted mean energy of a diagonal Hamiltonian.
double expectation(const Statevector &state, const IsingPolynomial &h);

/// Tabulated per-basis-state energies for repeated expectation values of
/// one Hamiltonian (optimization loops evaluate thousands of them).
class ExpectationEvaluator {
public:
  explicit ExpectationEvaluator(const IsingPolynomial &h);

  int qubit_count() const { return qubit_count_; }
  double value(const Statevector &state) const;

private:
  int qubit_count_ = 0;
  std::vector<double> energies_;
};

/// Index of the most probable basis state (ties break to the lowest index)
/// plus its probability.
std::pair<std::uint64_t, double> argmax_probability(const Statevector &state);

/**
 * Exact gradient dE/d(symbol) of expectation(simulate(c, b), h) by the
 * parameter-shift rule, summed over every gate occurrence of the symbol.
 *
 * Single-qubit rotations use the two-term rule
 *   (E(phi + pi/2) - E(phi - pi/2)) / 2,
 * controlled rotations the four-term rule with shifts +-pi/2, +-3pi/2 and
 * coefficients (sqrt2 +- 1)/(4 sqrt2); each occurrence is chain-ruled by
 * its affine scale. Unknown symbols throw ParameterError.
 */
double gradient(const Circuit &circuit, const ParameterBinding &binding,
                const IsingPolynomial &h, const std::string &symbol);

/// As above but against a prebuilt evaluator.
double gradient(const Circuit &circuit, const ParameterBinding &binding,
                const ExpectationEvaluator &eval, const std::string &symbol);

/// Gradient for every symbol, aligned with circuit.parameter_order().
std::vector<double> gradient_all(const Circuit &circuit,
                                 const ParameterBinding &binding,
                                 const IsingPolynomial &h);

/// As above but against a prebuilt evaluator (for optimization loops).
std::vector<double> gradient_all(const Circuit &circuit,
                                 const ParameterBinding &binding,
                                 const ExpectationEvaluator &eval);

/// Central finite difference cross-check (not used by optimization paths).
double gradient_finite_difference(const Circuit &circuit,
                                  const ParameterBinding &binding,
                                  const IsingPolynomial &h,
                                  const std::string &symbol,
                                  double step = 1e-6);

} // namespace quopt
