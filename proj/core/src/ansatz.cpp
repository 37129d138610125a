#include "quopt/ansatz.hpp"

#include <algorithm>

namespace quopt {

Circuit build_qaoa(const IsingPolynomial &h, int layers) {
  if (layers < 1 || layers > 4)
    throw ParameterError("QAOA layers must lie in 1..4");
  int n = h.qubit_count();
  if (n < 1)
    throw ParameterError("QAOA needs at least one qubit");

  // Cost terms in (order, indices) order, matching the rendered form.
  std::vector<std::pair<std::vector<int>, double>> terms(h.terms().begin(),
                                                         h.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) {
    if (a.first.size() != b.first.size())
      return a.first.size() < b.first.size();
    return a.first < b.first;
  });

  Circuit c(n);
  for (int q = 0; q < n; ++q)
    c.push(GateKind::H, {q});

  for (int layer = 1; layer <= layers; ++layer) {
    std::string gamma = "gamma_" + std::to_string(layer);
    std::string beta = "beta_" + std::to_string(layer);
    for (const auto &[indices, coeff] : terms) {
      int target = indices.back();
      for (std::size_t i = 0; i + 1 < indices.size(); ++i)
        c.push(GateKind::CX, {indices[i], indices[i + 1]});
      c.push(GateKind::RZ, {target}, SymbolicParam{gamma, 2.0 * coeff});
      for (std::size_t i = indices.size() - 1; i-- > 0;)
        c.push(GateKind::CX, {indices[i], indices[i + 1]});
    }
    for (int q = 0; q < n; ++q)
      c.push(GateKind::RX, {q}, SymbolicParam{beta, 2.0});
  }
  return c;
}

namespace {

using namespace ansatz_ops;

AnsatzLayout layout_1() {
  return {{RotationLayer{GateKind::RX}, RotationLayer{GateKind::RZ}}};
}

AnsatzLayout layout_3() {
  return {{RotationLayer{GateKind::RX}, RotationLayer{GateKind::RZ},
           EntangleChain{GateKind::CRZ, /*descending=*/true}}};
}

AnsatzLayout layout_4() {
  return {{RotationLayer{GateKind::RX}, RotationLayer{GateKind::RZ},
           EntangleChain{GateKind::CRX, /*descending=*/true}}};
}

AnsatzLayout layout_9() {
  return {{HadamardLayer{}, EntangleChain{GateKind::CZ},
           RotationLayer{GateKind::RX}}};
}

AnsatzLayout layout_11() {
  return {{RotationLayer{GateKind::RY}, RotationLayer{GateKind::RZ},
           EntangleChain{GateKind::CX},
           RotationLayer{GateKind::RY, /*inner_only=*/true},
           RotationLayer{GateKind::RZ, /*inner_only=*/true}}};
}

} // namespace

AnsatzRegistry AnsatzRegistry::with_builtins() {
  AnsatzRegistry reg;
  reg.register_ansatz(1, layout_1());
  reg.register_ansatz(3, layout_3());
  reg.register_ansatz(4, layout_4());
  reg.register_ansatz(9, layout_9());
  reg.register_ansatz(11, layout_11());
  return reg;
}

void AnsatzRegistry::register_ansatz(int id, AnsatzLayout layout) {
  layouts_[id] = std::move(layout);
}

std::vector<int> AnsatzRegistry::ids() const {
  std::vector<int> out;
  for (const auto &[id, _] : layouts_)
    out.push_back(id);
  return out;
}

Circuit AnsatzRegistry::build(int ansatz_id, int qubit_count, int layers) const {
  auto it = layouts_.find(ansatz_id);
  if (it == layouts_.end())
    throw ParameterError("unknown ansatz id: " + std::to_string(ansatz_id));
  if (layers < 1 || layers > 4)
    throw ParameterError("ansatz layers must lie in 1..4");
  if (qubit_count < 1)
    throw ParameterError("ansatz needs at least one qubit");

  Circuit c(qubit_count);
  int next_param = 0;
  auto fresh = [&next_param] {
    return SymbolicParam{"theta_" + std::to_string(next_param++)};
  };

  for (int layer = 0; layer < layers; ++layer) {
    for (const auto &step : it->second.steps) {
      if (const auto *rot = std::get_if<ansatz_ops::RotationLayer>(&step)) {
        int lo = rot->inner_only ? 1 : 0;
        int hi = rot->inner_only ? qubit_count - 1 : qubit_count;
        for (int q = lo; q < hi; ++q)
          c.push(rot->kind, {q}, fresh());
      } else if (std::holds_alternative<ansatz_ops::HadamardLayer>(step)) {
        for (int q = 0; q < qubit_count; ++q)
          c.push(GateKind::H, {q});
      } else {
        const auto &chain = std::get<ansatz_ops::EntangleChain>(step);
        bool parametrized = is_rotation(chain.kind);
        if (chain.descending) {
          for (int q = qubit_count - 1; q >= 1; --q)
            c.push(chain.kind, {q, q - 1},
                   parametrized ? GateParam{fresh()} : GateParam{});
        } else {
          for (int q = 0; q + 1 < qubit_count; ++q)
            c.push(chain.kind, {q, q + 1},
                   parametrized ? GateParam{fresh()} : GateParam{});
        }
      }
    }
  }
  return c;
}

Circuit build_vqe_ansatz(int ansatz_id, int qubit_count, int layers) {
  static const AnsatzRegistry registry = AnsatzRegistry::with_builtins();
  return registry.build(ansatz_id, qubit_count, layers);
}

std::vector<PoolOperator> pool_operators(int qubit_count) {
  if (qubit_count < 1)
    throw ParameterError("pool needs at least one qubit");
  std::vector<PoolOperator> pool;
  for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ})
    for (int q = 0; q < qubit_count; ++q)
      pool.push_back({kind, {q}});
  for (GateKind kind : {GateKind::CRX, GateKind::CRY, GateKind::CRZ})
    for (int c = 0; c < qubit_count; ++c)
      for (int t = 0; t < qubit_count; ++t)
        if (c != t)
          pool.push_back({kind, {c, t}});
  return pool;
}

} // namespace quopt
