/**
 * @file circuit.hpp
 * @brief Gate-list circuit IR with numeric or symbolic rotation parameters.
 */

#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "quopt/common.hpp"

namespace quopt {

enum class GateKind { H, X, RX, RY, RZ, CRX, CRY, CRZ, CX, CZ };

bool is_rotation(GateKind kind);
bool is_controlled(GateKind kind);
int gate_arity(GateKind kind);
/// Lowercase OpenQASM name ("h", "crz", ...).
std::string gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string &name);

/// A symbolic angle of the affine form scale * symbol + offset, in radians.
struct SymbolicParam {
  std::string name;
  double scale = 1.0;
  double offset = 0.0;

  bool operator==(const SymbolicParam &) const = default;
};

/// none (H/X/CX/CZ) | numeric radians | symbolic.
using GateParam = std::variant<std::monostate, double, SymbolicParam>;

struct Gate {
  GateKind kind = GateKind::H;
  /// One entry, or [control, target] for two-qubit kinds.
  std::vector<int> qubits;
  GateParam param;

  bool operator==(const Gate &) const = default;
};

/// Angle bound to each symbolic parameter name, in radians.
struct ParameterBinding {
  std::map<std::string, double> values;

  double at(const std::string &name) const;
  bool contains(const std::string &name) const { return values.count(name) > 0; }

  bool operator==(const ParameterBinding &) const = default;
};

class Circuit {
public:
  Circuit() = default;
  explicit Circuit(int qubits) : qubit_count_(qubits) {
    if (qubits < 0)
      throw ParameterError("negative qubit count");
  }

  int qubit_count() const { return qubit_count_; }
  const std::vector<Gate> &gates() const { return gates_; }
  /// Distinct symbolic names in first-use order.
  const std::vector<std::string> &parameter_order() const {
    return parameter_order_;
  }

  /// Appends a gate after checking the Gate invariants (arity, parameter
  /// presence, index range, distinct qubits).
  void push(Gate gate);

  void push(GateKind kind, std::vector<int> qubits, GateParam param = {}) {
    push(Gate{kind, std::move(qubits), std::move(param)});
  }

  /// Numeric angle of gates_[i] under `binding` (0 for non-rotations).
  double angle_at(std::size_t i, const ParameterBinding &binding) const;

  /// Substitutes a complete binding, yielding a fully numeric circuit.
  Circuit bind(const ParameterBinding &binding) const;

  /// True when no gate carries a symbolic parameter.
  bool is_numeric() const { return parameter_order_.empty(); }

  /// Longest chain of gates over shared qubits.
  int depth() const;

  bool operator==(const Circuit &) const = default;

private:
  int qubit_count_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::string> parameter_order_;
};

/// Resolves a gate's angle under a binding; throws BindingError on a missing
/// symbol and ParameterError for non-finite results.
double resolve_angle(const Gate &gate, const ParameterBinding &binding);

} // namespace quopt
