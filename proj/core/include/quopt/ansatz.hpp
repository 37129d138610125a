/**
 * @file ansatz.hpp
 * @brief Circuit builders: QAOA, the VQE ansatz registry, and the adaptive
 *        operator pool.
 */

#pragma once

#include <variant>
#include <vector>

#include "quopt/circuit.hpp"
#include "quopt/polynomial.hpp"

namespace quopt {

/**
 * Builds a p-layer QAOA circuit for a diagonal cost Hamiltonian.
 *
 * Structure: H on every qubit, then per layer l a cost block followed by a
 * mixer block. Each Hamiltonian term with index set S and coefficient c
 * becomes a CX ladder onto max(S), RZ(2*c*gamma_l) and the inverse ladder;
 * the constant term contributes no gates. The mixer is RX(2*beta_l) on
 * every qubit. Parameters run gamma_1, beta_1, ..., gamma_p, beta_p.
 * Layers must lie in 1..4.
 */
Circuit build_qaoa(const IsingPolynomial &h, int layers);

/// Structural elements an ansatz layer is assembled from.
namespace ansatz_ops {

/// Parametrized rotations on every qubit (or only inner qubits 1..n-2).
struct RotationLayer {
  GateKind kind = GateKind::RX; // RX | RY | RZ
  bool inner_only = false;
};

/// Hadamard on every qubit.
struct HadamardLayer {};

/// Linear chain of two-qubit gates. Ascending: (0,1), (1,2), ...;
/// descending: (n-1,n-2), ..., (1,0). First index is the control.
struct EntangleChain {
  GateKind kind = GateKind::CX; // CX | CZ | CRX | CRY | CRZ
  bool descending = false;
};

using Step = std::variant<RotationLayer, HadamardLayer, EntangleChain>;

} // namespace ansatz_ops

/// One layer's worth of steps; a circuit repeats the layout `layers` times.
struct AnsatzLayout {
  std::vector<ansatz_ops::Step> steps;
};

/// Registry of hardware-efficient ansatz layouts keyed by integer id.
/// Ships ids 1, 3, 4, 9 and 11; further ids can be registered at runtime.
class AnsatzRegistry {
public:
  /// Registry preloaded with the built-in layouts.
  static AnsatzRegistry with_builtins();

  void register_ansatz(int id, AnsatzLayout layout);
  bool contains(int id) const { return layouts_.count(id) > 0; }
  std::vector<int> ids() const;

  /// Layered circuit with a fresh symbolic parameter theta_k for every
  /// rotation, allocated in gate order. Layers must lie in 1..4.
  Circuit build(int ansatz_id, int qubit_count, int layers) const;

private:
  std::map<int, AnsatzLayout> layouts_;
};

/// Builds from the process-wide registry (with_builtins by default).
Circuit build_vqe_ansatz(int ansatz_id, int qubit_count, int layers);

/// A gate template from the adaptive pool: kind plus fixed qubits, with the
/// rotation parameter left open.
struct PoolOperator {
  GateKind kind = GateKind::RX;
  std::vector<int> qubits;

  bool operator==(const PoolOperator &) const = default;
};

/// The six-gate-type adaptive pool: RX/RY/RZ on every qubit followed by
/// CRX/CRY/CRZ on every ordered qubit pair; 3n + 3n(n-1) candidates in a
/// fixed deterministic order.
std::vector<PoolOperator> pool_operators(int qubit_count);

} // namespace quopt
