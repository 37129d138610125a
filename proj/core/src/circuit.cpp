#include "quopt/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace quopt {

bool is_rotation(GateKind kind) {
  switch (kind) {
  case GateKind::RX:
  case GateKind::RY:
  case GateKind::RZ:
  case GateKind::CRX:
  case GateKind::CRY:
  case GateKind::CRZ:
    return true;
  default:
    return false;
  }
}

bool is_controlled(GateKind kind) {
  switch (kind) {
  case GateKind::CRX:
  case GateKind::CRY:
  case GateKind::CRZ:
  case GateKind::CX:
  case GateKind::CZ:
    return true;
  default:
    return false;
  }
}

int gate_arity(GateKind kind) { return is_controlled(kind) ? 2 : 1; }

std::string gate_name(GateKind kind) {
  switch (kind) {
  case GateKind::H:
    return "h";
  case GateKind::X:
    return "x";
  case GateKind::RX:
    return "rx";
  case GateKind::RY:
    return "ry";
  case GateKind::RZ:
    return "rz";
  case GateKind::CRX:
    return "crx";
  case GateKind::CRY:
    return "cry";
  case GateKind::CRZ:
    return "crz";
  case GateKind::CX:
    return "cx";
  case GateKind::CZ:
    return "cz";
  }
  throw ParameterError("unknown gate kind");
}

GateKind gate_kind_from_name(const std::string &name) {
  static const std::map<std::string, GateKind> table = {
      {"h", GateKind::H},     {"x", GateKind::X},     {"rx", GateKind::RX},
      {"ry", GateKind::RY},   {"rz", GateKind::RZ},   {"crx", GateKind::CRX},
      {"cry", GateKind::CRY}, {"crz", GateKind::CRZ}, {"cx", GateKind::CX},
      {"cz", GateKind::CZ}};
  auto it = table.find(name);
  if (it == table.end())
    throw ParameterError("unknown gate name: " + name);
  return it->second;
}

double ParameterBinding::at(const std::string &name) const {
  auto it = values.find(name);
  if (it == values.end())
    throw BindingError("unbound parameter: " + name);
  return it->second;
}

void Circuit::push(Gate gate) {
  if (static_cast<int>(gate.qubits.size()) != gate_arity(gate.kind))
    throw ParameterError("gate " + gate_name(gate.kind) + " expects " +
                         std::to_string(gate_arity(gate.kind)) + " qubit(s)");
  for (int q : gate.qubits)
    if (q < 0 || q >= qubit_count_)
      throw ParameterError("gate qubit index out of range");
  if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1])
    throw ParameterError("control and target must be distinct");
  bool has_param = !std::holds_alternative<std::monostate>(gate.param);
  if (is_rotation(gate.kind) != has_param)
    throw ParameterError(is_rotation(gate.kind)
                             ? "rotation gate needs a parameter"
                             : "non-rotation gate cannot take a parameter");
  if (const auto *sym = std::get_if<SymbolicParam>(&gate.param)) {
    if (sym->name.empty())
      throw ParameterError("symbolic parameter needs a name");
    if (std::find(parameter_order_.begin(), parameter_order_.end(),
                  sym->name) == parameter_order_.end())
      parameter_order_.push_back(sym->name);
  }
  if (const auto *num = std::get_if<double>(&gate.param)) {
    if (!std::isfinite(*num))
      throw ParameterError("gate angle must be finite");
  }
  gates_.push_back(std::move(gate));
}

double Circuit::angle_at(std::size_t i, const ParameterBinding &binding) const {
  return resolve_angle(gates_.at(i), binding);
}

Circuit Circuit::bind(const ParameterBinding &binding) const {
  Circuit out(qubit_count_);
  for (const auto &g : gates_) {
    Gate bound = g;
    if (std::holds_alternative<SymbolicParam>(g.param))
      bound.param = resolve_angle(g, binding);
    out.push(std::move(bound));
  }
  return out;
}

int Circuit::depth() const {
  std::vector<int> frontier(static_cast<std::size_t>(qubit_count_), 0);
  int depth = 0;
  for (const auto &g : gates_) {
    int level = 0;
    for (int q : g.qubits)
      level = std::max(level, frontier[static_cast<std::size_t>(q)]);
    ++level;
    for (int q : g.qubits)
      frontier[static_cast<std::size_t>(q)] = level;
    depth = std::max(depth, level);
  }
  return depth;
}

double resolve_angle(const Gate &gate, const ParameterBinding &binding) {
  if (const auto *num = std::get_if<double>(&gate.param))
    return *num;
  if (const auto *sym = std::get_if<SymbolicParam>(&gate.param)) {
    double angle = sym->scale * binding.at(sym->name) + sym->offset;
    if (!std::isfinite(angle))
      throw ParameterError("bound angle is not finite");
    return angle;
  }
  return 0.0;
}

} // namespace quopt
