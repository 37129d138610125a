#include "quopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace quopt {

namespace {

constexpr double kConvergenceMargin = 1e-9;
constexpr double kStallGradient = 1e-10;

std::set<std::uint64_t> ground_indices(const SpectrumSummary &spectrum) {
  std::set<std::uint64_t> out;
  for (const auto &bits : spectrum.ground_states)
    out.insert(parse_bits(bits));
  return out;
}

bool is_converged(const Statevector &sv,
                  const std::set<std::uint64_t> &ground) {
  auto [index, prob] = argmax_probability(sv);
  double uniform = 1.0 / static_cast<double>(sv.amplitudes.size());
  return prob > uniform * (1.0 + kConvergenceMargin) && ground.count(index) > 0;
}

std::vector<std::pair<std::string, double>>
collect_top_states(const Statevector &sv, int count) {
  std::vector<std::pair<std::uint64_t, double>> entries;
  for (std::uint64_t i = 0; i < sv.amplitudes.size(); ++i) {
    double p = std::norm(sv.amplitudes[i]);
    if (p >= 1e-12)
      entries.emplace_back(i, p);
  }
  std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second)
      return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<int>(entries.size()) > count)
    entries.resize(static_cast<std::size_t>(count));
  std::vector<std::pair<std::string, double>> out;
  for (auto [i, p] : entries)
    out.emplace_back(format_bits(i, sv.qubit_count), p);
  return out;
}

} // namespace

std::string to_string(Method method) {
  switch (method) {
  case Method::QAOA:
    return "qaoa";
  case Method::VQE:
    return "vqe";
  case Method::AdaptiveVQE:
    return "adaptive_vqe";
  }
  throw ParameterError("unknown method");
}

Method method_from_string(const std::string &name) {
  if (name == "qaoa")
    return Method::QAOA;
  if (name == "vqe")
    return Method::VQE;
  if (name == "adaptive_vqe")
    return Method::AdaptiveVQE;
  throw ParameterError("unknown method: " + name);
}

void OptimizerConfig::check() const {
  if (max_steps < 1)
    throw ParameterError("max_steps must be positive");
  if (learning_rate <= 0.0)
    throw ParameterError("learning_rate must be positive");
  if (layers < 1 || layers > 4)
    throw ParameterError("layers must lie in 1..4");
  if (adaptive_max_gates < 1)
    throw ParameterError("adaptive_max_gates must be positive");
  if (top_states < 1)
    throw ParameterError("top_states must be positive");
}

ParameterBinding random_binding(const Circuit &circuit, std::uint64_t seed) {
  Rng rng(seed);
  ParameterBinding b;
  for (const auto &name : circuit.parameter_order())
    b.values[name] = rng.uniform(0.0, 2.0 * M_PI);
  return b;
}

SolveOutcome optimize_parameters(const Circuit &circuit,
                                 const IsingPolynomial &h,
                                 const SpectrumSummary &spectrum,
                                 const OptimizerConfig &cfg,
                                 std::optional<ParameterBinding> initial) {
  cfg.check();
  if (circuit.parameter_order().empty())
    throw ParameterError("optimize_parameters needs a parametrized circuit");

  SolveOutcome out;
  out.circuit = circuit;
  out.binding = initial ? *initial : random_binding(circuit, cfg.seed);
  auto ground = ground_indices(spectrum);
  ExpectationEvaluator eval(h);

  const auto &order = circuit.parameter_order();
  for (int step = 0; step <= cfg.max_steps; ++step) {
    Statevector sv = simulate(circuit, out.binding);
    if (is_converged(sv, ground)) {
      out.converged = true;
      out.steps_taken = step;
      out.top_states = collect_top_states(sv, cfg.top_states);
      return out;
    }
    if (step == cfg.max_steps) {
      out.steps_taken = step;
      out.top_states = collect_top_states(sv, cfg.top_states);
      return out;
    }
    std::vector<double> grads = gradient_all(circuit, out.binding, eval);
    for (std::size_t i = 0; i < order.size(); ++i)
      out.binding.values[order[i]] -= cfg.learning_rate * grads[i];
  }
  return out; // unreachable
}

SolveOutcome adaptive_vqe(const IsingPolynomial &h,
                          const SpectrumSummary &spectrum,
                          const OptimizerConfig &cfg) {
  cfg.check();
  int n = h.qubit_count();
  Circuit circuit(n);
  for (int q = 0; q < n; ++q)
    circuit.push(GateKind::H, {q});

  SolveOutcome out;
  out.binding = ParameterBinding{};
  auto pool = pool_operators(n);
  ExpectationEvaluator eval(h);
  int next_param = 0;
  int steps_total = 0;

  for (int append = 0; append < cfg.adaptive_max_gates; ++append) {
    // Score every candidate appended with a fresh parameter at 0.
    std::string probe = "theta_" + std::to_string(next_param);
    double best_grad = 0.0;
    std::size_t best_index = 0;
    bool found = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      Circuit candidate = circuit;
      candidate.push(pool[i].kind, pool[i].qubits, SymbolicParam{probe});
      ParameterBinding b = out.binding;
      b.values[probe] = 0.0;
      double g = std::abs(gradient(candidate, b, eval, probe));
      if (!found || g > best_grad) {
        found = true;
        best_grad = g;
        best_index = i;
      }
    }
    if (best_grad < kStallGradient) {
      out.stalled = true;
      break;
    }

    circuit.push(pool[best_index].kind, pool[best_index].qubits,
                 SymbolicParam{probe});
    out.binding.values[probe] = 0.0;
    ++next_param;

    SolveOutcome inner =
        optimize_parameters(circuit, h, spectrum, cfg, out.binding);
    steps_total += inner.steps_taken;
    out.binding = inner.binding;
    out.intermediate_circuits.emplace_back(circuit, out.binding);
    if (inner.converged) {
      out.converged = true;
      break;
    }
  }

  out.circuit = circuit;
  out.steps_taken = steps_total;
  Statevector sv = simulate(circuit, out.binding);
  out.top_states = collect_top_states(sv, cfg.top_states);
  return out;
}

} // namespace quopt
