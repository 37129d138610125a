// Dense matrix-exponential oracle for circuit-equivalence checks, fully
// independent of the gate-based simulator: states are propagated by generic
// matrix exponentials of explicitly assembled dense operators.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "quopt/polynomial.hpp"

namespace quopt::testsupport {

using Cd = std::complex<double>;

/// Column-major dense square matrix.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<Cd> data;

  explicit DenseMatrix(std::size_t n) : dim(n), data(n * n, Cd(0, 0)) {}

  Cd &at(std::size_t row, std::size_t col) { return data[col * dim + row]; }
  const Cd &at(std::size_t row, std::size_t col) const {
    return data[col * dim + row];
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      m.at(i, i) = Cd(1, 0);
    return m;
  }

  DenseMatrix multiply(const DenseMatrix &other) const {
    DenseMatrix out(dim);
    for (std::size_t col = 0; col < dim; ++col)
      for (std::size_t k = 0; k < dim; ++k) {
        Cd f = other.at(k, col);
        if (f == Cd(0, 0))
          continue;
        for (std::size_t row = 0; row < dim; ++row)
          out.at(row, col) += at(row, k) * f;
      }
    return out;
  }

  std::vector<Cd> apply(const std::vector<Cd> &v) const {
    std::vector<Cd> out(dim, Cd(0, 0));
    for (std::size_t col = 0; col < dim; ++col) {
      if (v[col] == Cd(0, 0))
        continue;
      for (std::size_t row = 0; row < dim; ++row)
        out[row] += at(row, col) * v[col];
    }
    return out;
  }

  double inf_norm() const {
    double worst = 0.0;
    for (std::size_t row = 0; row < dim; ++row) {
      double sum = 0.0;
      for (std::size_t col = 0; col < dim; ++col)
        sum += std::abs(at(row, col));
      worst = std::max(worst, sum);
    }
    return worst;
  }
};

/// exp(M) by scaling-and-squaring with a Taylor series.
inline DenseMatrix expm(const DenseMatrix &m) {
  int squarings = 0;
  double norm = m.inf_norm();
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  double scale = 1.0 / static_cast<double>(1ULL << squarings);

  DenseMatrix scaled(m.dim);
  for (std::size_t i = 0; i < m.data.size(); ++i)
    scaled.data[i] = m.data[i] * scale;

  DenseMatrix result = DenseMatrix::identity(m.dim);
  DenseMatrix term = DenseMatrix::identity(m.dim);
  for (int k = 1; k <= 30; ++k) {
    term = term.multiply(scaled);
    for (std::size_t i = 0; i < term.data.size(); ++i)
      term.data[i] /= static_cast<double>(k);
    for (std::size_t i = 0; i < result.data.size(); ++i)
      result.data[i] += term.data[i];
    if (term.inf_norm() < 1e-22)
      break;
  }
  for (int s = 0; s < squarings; ++s)
    result = result.multiply(result);
  return result;
}

/// Dense diagonal cost operator with per-basis-state energies evaluated by
/// explicit spin products.
inline DenseMatrix dense_cost_operator(const IsingPolynomial &h) {
  std::size_t dim = 1ULL << h.qubit_count();
  DenseMatrix m(dim);
  for (std::size_t index = 0; index < dim; ++index) {
    double e = h.constant();
    for (const auto &[vars, coeff] : h.terms()) {
      double prod = coeff;
      for (int v : vars)
        prod *= ((index >> v) & 1ULL) ? -1.0 : 1.0;
      e += prod;
    }
    m.at(index, index) = Cd(e, 0);
  }
  return m;
}

/// Dense sum of Pauli-X over every qubit.
inline DenseMatrix dense_mixer_operator(int qubits) {
  std::size_t dim = 1ULL << qubits;
  DenseMatrix m(dim);
  for (std::size_t index = 0; index < dim; ++index)
    for (int q = 0; q < qubits; ++q)
      m.at(index ^ (1ULL << q), index) += Cd(1, 0);
  return m;
}

/// One QAOA layer acting on the uniform superposition: the cost exponential
/// exp(-i gamma H) is applied first, then the mixer exp(-i beta sum X).
inline std::vector<Cd> qaoa_layer_oracle(const IsingPolynomial &h, double gamma,
                                         double beta) {
  int n = h.qubit_count();
  std::size_t dim = 1ULL << n;

  DenseMatrix cost = dense_cost_operator(h);
  DenseMatrix mixer = dense_mixer_operator(n);
  for (auto &x : cost.data)
    x *= Cd(0, -gamma);
  for (auto &x : mixer.data)
    x *= Cd(0, -beta);

  std::vector<Cd> state(dim, Cd(1.0 / std::sqrt(static_cast<double>(dim)), 0));
  state = expm(cost).apply(state);
  state = expm(mixer).apply(state);
  return state;
}

} // namespace quopt::testsupport
