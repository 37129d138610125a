#include "quopt/simulator.hpp"

#include <algorithm>
#include <cmath>

namespace quopt {

namespace {

using cd = std::complex<double>;

struct Mat2 {
  cd m00, m01, m10, m11;
};

Mat2 rotation_matrix(GateKind kind, double angle) {
  double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  switch (kind) {
  case GateKind::RX:
  case GateKind::CRX:
    return {cd(c, 0), cd(0, -s), cd(0, -s), cd(c, 0)};
  case GateKind::RY:
  case GateKind::CRY:
    return {cd(c, 0), cd(-s, 0), cd(s, 0), cd(c, 0)};
  case GateKind::RZ:
  case GateKind::CRZ:
    return {cd(c, -s), cd(0, 0), cd(0, 0), cd(c, s)};
  default:
    throw ParameterError("not a rotation gate");
  }
}

void apply_1q(std::vector<cd> &amp, int target, const Mat2 &u) {
  std::uint64_t bit = 1ULL << target;
  std::uint64_t dim = amp.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit)
      continue;
    cd a0 = amp[i], a1 = amp[i | bit];
    amp[i] = u.m00 * a0 + u.m01 * a1;
    amp[i | bit] = u.m10 * a0 + u.m11 * a1;
  }
}

void apply_controlled_1q(std::vector<cd> &amp, int control, int target,
                         const Mat2 &u) {
  std::uint64_t cbit = 1ULL << control;
  std::uint64_t tbit = 1ULL << target;
  std::uint64_t dim = amp.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (!(i & cbit) || (i & tbit))
      continue;
    cd a0 = amp[i], a1 = amp[i | tbit];
    amp[i] = u.m00 * a0 + u.m01 * a1;
    amp[i | tbit] = u.m10 * a0 + u.m11 * a1;
  }
}

void apply_cx(std::vector<cd> &amp, int control, int target) {
  std::uint64_t cbit = 1ULL << control;
  std::uint64_t tbit = 1ULL << target;
  std::uint64_t dim = amp.size();
  for (std::uint64_t i = 0; i < dim; ++i)
    if ((i & cbit) && !(i & tbit))
      std::swap(amp[i], amp[i | tbit]);
}

void apply_cz(std::vector<cd> &amp, int control, int target) {
  std::uint64_t mask = (1ULL << control) | (1ULL << target);
  std::uint64_t dim = amp.size();
  for (std::uint64_t i = 0; i < dim; ++i)
    if ((i & mask) == mask)
      amp[i] = -amp[i];
}

const Mat2 kHadamard{cd(M_SQRT1_2, 0), cd(M_SQRT1_2, 0), cd(M_SQRT1_2, 0),
                     cd(-M_SQRT1_2, 0)};
const Mat2 kPauliX{cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0)};

void apply_gate(std::vector<cd> &amp, const Gate &gate, double angle) {
  switch (gate.kind) {
  case GateKind::H:
    apply_1q(amp, gate.qubits[0], kHadamard);
    break;
  case GateKind::X:
    apply_1q(amp, gate.qubits[0], kPauliX);
    break;
  case GateKind::RX:
  case GateKind::RY:
  case GateKind::RZ:
    apply_1q(amp, gate.qubits[0], rotation_matrix(gate.kind, angle));
    break;
  case GateKind::CRX:
  case GateKind::CRY:
  case GateKind::CRZ:
    apply_controlled_1q(amp, gate.qubits[0], gate.qubits[1],
                        rotation_matrix(gate.kind, angle));
    break;
  case GateKind::CX:
    apply_cx(amp, gate.qubits[0], gate.qubits[1]);
    break;
  case GateKind::CZ:
    apply_cz(amp, gate.qubits[0], gate.qubits[1]);
    break;
  }
}

Statevector simulate_with_angles(const Circuit &circuit,
                                 const std::vector<double> &angles) {
  int n = circuit.qubit_count();
  if (n > 20)
    throw CapacityError("simulate supports at most 20 qubits, got " +
                        std::to_string(n));
  Statevector sv;
  sv.qubit_count = n;
  sv.amplitudes.assign(1ULL << n, cd(0, 0));
  sv.amplitudes[0] = cd(1, 0);
  const auto &gates = circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i)
    apply_gate(sv.amplitudes, gates[i], angles[i]);
  return sv;
}

std::vector<double> resolve_angles(const Circuit &circuit,
                                   const ParameterBinding &binding) {
  std::vector<double> angles(circuit.gates().size(), 0.0);
  for (std::size_t i = 0; i < circuit.gates().size(); ++i)
    angles[i] = resolve_angle(circuit.gates()[i], binding);
  return angles;
}

// Four-term shift coefficients for controlled rotations.
constexpr double kCr1 = (M_SQRT2 + 1.0) / (4.0 * M_SQRT2);
constexpr double kCr2 = (M_SQRT2 - 1.0) / (4.0 * M_SQRT2);

/**
 * Parameter-shift sweep over all gate occurrences whose slot is >= 0,
 * accumulating each occurrence's contribution into its slot.
 *
 * The state before gate i is maintained incrementally, so every shifted
 * evaluation only re-applies gate i and the suffix. The arithmetic is
 * identical to simulating the whole circuit with gate i's angle shifted.
 */
std::vector<double> gradient_sweep(const Circuit &circuit,
                                   const std::vector<double> &angles,
                                   const ExpectationEvaluator &eval,
                                   const std::vector<int> &slot_of_gate,
                                   std::size_t slot_count) {
  int n = circuit.qubit_count();
  if (n > 20)
    throw CapacityError("simulate supports at most 20 qubits");
  const auto &gates = circuit.gates();

  std::vector<double> grads(slot_count, 0.0);
  std::vector<cd> prefix(1ULL << n, cd(0, 0));
  prefix[0] = cd(1, 0);
  std::vector<cd> scratch;

  auto shifted_expectation = [&](std::size_t i, double delta) {
    scratch = prefix;
    apply_gate(scratch, gates[i], angles[i] + delta);
    for (std::size_t j = i + 1; j < gates.size(); ++j)
      apply_gate(scratch, gates[j], angles[j]);
    Statevector view;
    view.qubit_count = n;
    view.amplitudes = std::move(scratch);
    double e = eval.value(view);
    scratch = std::move(view.amplitudes);
    return e;
  };

  for (std::size_t i = 0; i < gates.size(); ++i) {
    int slot = slot_of_gate[i];
    if (slot >= 0) {
      const auto &sym = std::get<SymbolicParam>(gates[i].param);
      double occ;
      if (is_controlled(gates[i].kind)) {
        occ = kCr1 * (shifted_expectation(i, M_PI / 2) -
                      shifted_expectation(i, -M_PI / 2)) -
              kCr2 * (shifted_expectation(i, 3 * M_PI / 2) -
                      shifted_expectation(i, -3 * M_PI / 2));
      } else {
        occ = (shifted_expectation(i, M_PI / 2) -
               shifted_expectation(i, -M_PI / 2)) /
              2.0;
      }
      grads[static_cast<std::size_t>(slot)] += occ * sym.scale;
    }
    apply_gate(prefix, gates[i], angles[i]);
  }
  return grads;
}

} // namespace

double Statevector::norm_squared() const {
  double s = 0.0;
  for (const auto &a : amplitudes)
    s += std::norm(a);
  return s;
}

Statevector simulate(const Circuit &circuit, const ParameterBinding &binding) {
  return simulate_with_angles(circuit, resolve_angles(circuit, binding));
}

Distribution probabilities(const Statevector &state) {
  Distribution dist;
  for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
    double p = std::norm(state.amplitudes[i]);
    if (p >= 1e-12)
      dist[format_bits(i, state.qubit_count)] = p;
  }
  return dist;
}

double expectation(const Statevector &state, const IsingPolynomial &h) {
  return ExpectationEvaluator(h).value(state);
}

ExpectationEvaluator::ExpectationEvaluator(const IsingPolynomial &h)
    : qubit_count_(h.qubit_count()) {
  if (qubit_count_ > 20)
    throw CapacityError("expectation supports at most 20 qubits");
  energies_.resize(1ULL << qubit_count_);
  for (std::uint64_t i = 0; i < energies_.size(); ++i)
    energies_[i] = h.energy_of_index(i);
}

double ExpectationEvaluator::value(const Statevector &state) const {
  if (state.qubit_count != qubit_count_)
    throw ParameterError("Hamiltonian and state qubit counts differ");
  double e = 0.0;
  for (std::uint64_t i = 0; i < state.amplitudes.size(); ++i) {
    double p = std::norm(state.amplitudes[i]);
    if (p > 0.0)
      e += p * energies_[i];
  }
  return e;
}

std::pair<std::uint64_t, double> argmax_probability(const Statevector &state) {
  std::uint64_t best = 0;
  double best_p = std::norm(state.amplitudes[0]);
  for (std::uint64_t i = 1; i < state.amplitudes.size(); ++i) {
    double p = std::norm(state.amplitudes[i]);
    if (p > best_p) {
      best = i;
      best_p = p;
    }
  }
  return {best, best_p};
}

double gradient(const Circuit &circuit, const ParameterBinding &binding,
                const ExpectationEvaluator &eval, const std::string &symbol) {
  const auto &order = circuit.parameter_order();
  if (std::find(order.begin(), order.end(), symbol) == order.end())
    throw ParameterError("circuit has no parameter named " + symbol);

  const auto &gates = circuit.gates();
  std::vector<int> slots(gates.size(), -1);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto *sym = std::get_if<SymbolicParam>(&gates[i].param);
    if (sym && sym->name == symbol && sym->scale != 0.0)
      slots[i] = 0;
  }
  return gradient_sweep(circuit, resolve_angles(circuit, binding), eval, slots,
                        1)[0];
}

double gradient(const Circuit &circuit, const ParameterBinding &binding,
                const IsingPolynomial &h, const std::string &symbol) {
  return gradient(circuit, binding, ExpectationEvaluator(h), symbol);
}

std::vector<double> gradient_all(const Circuit &circuit,
                                 const ParameterBinding &binding,
                                 const ExpectationEvaluator &eval) {
  const auto &order = circuit.parameter_order();
  std::map<std::string, int> slot_of_symbol;
  for (std::size_t i = 0; i < order.size(); ++i)
    slot_of_symbol[order[i]] = static_cast<int>(i);

  const auto &gates = circuit.gates();
  std::vector<int> slots(gates.size(), -1);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto *sym = std::get_if<SymbolicParam>(&gates[i].param);
    if (sym && sym->scale != 0.0)
      slots[i] = slot_of_symbol.at(sym->name);
  }
  return gradient_sweep(circuit, resolve_angles(circuit, binding), eval, slots,
                        order.size());
}

std::vector<double> gradient_all(const Circuit &circuit,
                                 const ParameterBinding &binding,
                                 const IsingPolynomial &h) {
  return gradient_all(circuit, binding, ExpectationEvaluator(h));
}

double gradient_finite_difference(const Circuit &circuit,
                                  const ParameterBinding &binding,
                                  const IsingPolynomial &h,
                                  const std::string &symbol, double step) {
  ParameterBinding plus = binding, minus = binding;
  if (!plus.contains(symbol))
    throw ParameterError("binding has no parameter named " + symbol);
  plus.values[symbol] += step;
  minus.values[symbol] -= step;
  double ep = expectation(simulate(circuit, plus), h);
  double em = expectation(simulate(circuit, minus), h);
  return (ep - em) / (2.0 * step);
}

} // namespace quopt
