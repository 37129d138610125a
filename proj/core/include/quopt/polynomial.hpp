/**
 * @file polynomial.hpp
 * @brief Multilinear cost polynomials over binary and spin variables.
 *
 * BinaryPolynomial is a HUBO/QUBO cost function over x in {0,1}^n;
 * IsingPolynomial is the same cost over spins z in {-1,+1}^n and doubles as
 * a diagonal cost Hamiltonian (each term is a product of Pauli-Z factors).
 * Both store a constant plus a map from sorted variable-index sets to
 * coefficients, with algebraic reduction applied at insertion:
 * x_i^2 = x_i for binary variables and z_i^2 = 1 for spins.
 */

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "quopt/common.hpp"

namespace quopt {

/// Coefficients with |c| below this are pruned as zero.
inline constexpr double kCoeffEps = 1e-9;

namespace detail {

/// Shared term storage: map from sorted index vector to coefficient.
struct TermMap {
  double constant = 0.0;
  std::map<std::vector<int>, double> terms;
  int variable_count = 0;

  bool operator==(const TermMap &) const = default;
};

} // namespace detail

class IsingPolynomial;

/// Multilinear polynomial over binary variables x_i in {0,1}.
class BinaryPolynomial {
public:
  BinaryPolynomial() = default;
  explicit BinaryPolynomial(int variable_count) {
    data_.variable_count = variable_count;
  }

  int variable_count() const { return data_.variable_count; }
  double constant() const { return data_.constant; }
  const std::map<std::vector<int>, double> &terms() const {
    return data_.terms;
  }

  void set_variable_count(int n);

  /// Adds coeff * prod_{i in indices} x_i. Repeated indices collapse
  /// (x_i^2 = x_i); an empty index list adds to the constant.
  void add_term(std::vector<int> indices, double coeff);

  void add_constant(double c) { data_.constant += c; }

  /// Adds every term of `other` into this polynomial.
  void add(const BinaryPolynomial &other);

  /// Multiplies two polynomials (used for penalty products like
  /// prod_e (1 - x_e)). Result is reduced to multilinear form.
  BinaryPolynomial multiply(const BinaryPolynomial &other) const;

  /// Value of the polynomial at the assignment x (one entry per variable).
  double evaluate(const std::vector<int> &assignment) const;

  /// Exact spin-variable form under x_i = (1 - z_i) / 2.
  IsingPolynomial to_ising() const;

  bool operator==(const BinaryPolynomial &) const = default;

private:
  friend class IsingPolynomial;
  detail::TermMap data_;
};

/// Summary of the two lowest energy levels of a diagonal Hamiltonian.
struct SpectrumSummary {
  double ground_energy = 0.0;
  std::vector<std::string> ground_states; // sorted bitstrings, MSB first
  double first_excited_energy = 0.0;
  std::vector<std::string> first_excited_states;
};

/// Multilinear polynomial over spin variables z_i in {-1,+1}. As an
/// operator it is a sum of Pauli-Z products, diagonal in the computational
/// basis: bit 0 of a basis state corresponds to z = +1, bit 1 to z = -1.
class IsingPolynomial {
public:
  IsingPolynomial() = default;
  explicit IsingPolynomial(int qubit_count) {
    data_.variable_count = qubit_count;
  }

  int qubit_count() const { return data_.variable_count; }
  double constant() const { return data_.constant; }
  const std::map<std::vector<int>, double> &terms() const {
    return data_.terms;
  }

  void set_qubit_count(int n);

  /// Adds coeff * prod_{i in indices} z_i. Repeated indices cancel in
  /// pairs (z_i^2 = 1).
  void add_term(std::vector<int> indices, double coeff);

  void add_constant(double c) { data_.constant += c; }

  void add(const IsingPolynomial &other);

  /// Energy at a full bit assignment given as a rendered bitstring
  /// (most significant qubit first). s_i = +1 for bit 0, -1 for bit 1.
  double energy(const std::string &bits) const;

  /// Energy at the basis state with the given little-endian index.
  double energy_of_index(std::uint64_t index) const;

  /// Exact binary form under z_i = 1 - 2 x_i.
  BinaryPolynomial to_binary() const;

  /// Exhaustive-enumeration eigensolve over all 2^n basis states.
  /// Throws CapacityError above 20 qubits or when the spectrum is a single
  /// degenerate level (constant Hamiltonian).
  SpectrumSummary exact_solve() const;

  bool operator==(const IsingPolynomial &) const = default;

private:
  friend class BinaryPolynomial;
  detail::TermMap data_;
};

inline IsingPolynomial binary_to_ising(const BinaryPolynomial &p) {
  return p.to_ising();
}
inline BinaryPolynomial ising_to_binary(const IsingPolynomial &p) {
  return p.to_binary();
}

/**
 * Renders a deterministic human-readable Hamiltonian string.
 *
 * Terms are sorted by (order, indices) and formatted as
 * "<coeff> * Z<i> @ Z<j>" joined with " + "; a nonzero constant is appended
 * last. A constant-only polynomial renders as just the constant, and the
 * zero polynomial as "0". parse_hamiltonian is the exact inverse.
 */
std::string render_hamiltonian(const IsingPolynomial &h);

/// Parses the render_hamiltonian format back into a polynomial.
/// `qubit_count` defaults to (max index + 1) when not given.
IsingPolynomial parse_hamiltonian(const std::string &text,
                                  int qubit_count = -1);

} // namespace quopt
