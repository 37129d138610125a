#include "quopt/formulations.hpp"

#include <algorithm>
#include <cmath>

namespace quopt {

namespace {

constexpr double kPenaltyB = 1.0;

double max_weight(const Hypergraph &g) {
  double w = 1.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    w = std::max(w, g.weight_of(e));
  return w;
}

double total_weight(const Hypergraph &g) {
  double w = 0.0;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    w += g.weight_of(e);
  return w;
}

/// (sum of listed variables + offset)^2, appended to `out` with weight A.
void add_squared_linear(BinaryPolynomial &out, const std::vector<int> &vars,
                        double offset, double weight) {
  BinaryPolynomial lin;
  lin.add_constant(offset);
  for (int v : vars)
    lin.add_term({v}, 1.0);
  out.add(lin.multiply(lin).multiply([&] {
    BinaryPolynomial w;
    w.add_constant(weight);
    return w;
  }()));
}

// --- connected_components ---------------------------------------------------
// A(1 - x_f) + A * sum_{(u,v) in E} (x_u - x_v)^2 + B * sum_v x_v,
// A = B*n + 1. Ground state: indicator of the component containing f.
BinaryPolynomial build_connected_components(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  int f = inst.params.value("fixed_node", 0);
  double a = kPenaltyB * g.node_count + 1.0;
  BinaryPolynomial p(g.node_count);
  p.add_constant(a);
  p.add_term({f}, -a);
  for (const auto &e : g.edges) {
    p.add_term({e[0]}, a);
    p.add_term({e[1]}, a);
    p.add_term({e[0], e[1]}, -2.0 * a);
  }
  for (int v = 0; v < g.node_count; ++v)
    p.add_term({v}, kPenaltyB);
  return p;
}

// --- community_detection ----------------------------------------------------
// Minimize -sum_{u<v} (2m*A_uv - d_u d_v) s_u s_v over spins; integer
// coefficients, so energies are exact. No constraints, no penalty.
BinaryPolynomial build_community_detection(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  auto deg = g.degrees();
  double two_m = 2.0 * static_cast<double>(g.edges.size());
  IsingPolynomial h(g.node_count);
  for (int u = 0; u < g.node_count; ++u)
    for (int v = u + 1; v < g.node_count; ++v) {
      double c = two_m * (g.has_pair_edge(u, v) ? 1.0 : 0.0) -
                 static_cast<double>(deg[static_cast<std::size_t>(u)]) *
                     static_cast<double>(deg[static_cast<std::size_t>(v)]);
      if (c != 0.0)
        h.add_term({u, v}, -c);
    }
  return h.to_binary();
}

// --- k_clique -----------------------------------------------------------------
// A(k - sum_v x_v)^2 + B(k(k-1)/2 - sum_{(u,v) in E} x_u x_v), A = B*k + 1.
// Ground energy 0 exactly on the k-cliques.
BinaryPolynomial build_k_clique(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  int k = inst.params.value("k", 0);
  double a = kPenaltyB * k + 1.0;
  BinaryPolynomial p(g.node_count);
  std::vector<int> all(static_cast<std::size_t>(g.node_count));
  for (int v = 0; v < g.node_count; ++v)
    all[static_cast<std::size_t>(v)] = v;
  add_squared_linear(p, all, -static_cast<double>(k), a);
  p.add_constant(kPenaltyB * k * (k - 1) / 2.0);
  for (const auto &e : g.edges)
    p.add_term({e[0], e[1]}, -kPenaltyB);
  return p;
}

// --- graph_isomorphism --------------------------------------------------------
// Row/column one-hot penalties plus mismatch penalties for every pair that
// is an edge in exactly one of the two graphs.
BinaryPolynomial build_graph_isomorphism(const ProblemInstance &inst) {
  const auto &g1 = inst.graph;
  Hypergraph g2 = inst.second_graph();
  int n = g1.node_count;
  auto var = [n](int v, int i) { return v * n + i; };
  double a = 2.0;
  BinaryPolynomial p(n * n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> row;
    for (int i = 0; i < n; ++i)
      row.push_back(var(v, i));
    add_squared_linear(p, row, -1.0, a);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> col;
    for (int v = 0; v < n; ++v)
      col.push_back(var(v, i));
    add_squared_linear(p, col, -1.0, a);
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (g1.has_pair_edge(u, v) == g2.has_pair_edge(i, j))
            continue;
          p.add_term({var(u, i), var(v, j)}, kPenaltyB);
          p.add_term({var(u, j), var(v, i)}, kPenaltyB);
        }
  return p;
}

// --- graph_coloring -----------------------------------------------------------
// One-hot color per vertex plus same-color adjacency penalties; ground
// energy 0 exactly on the proper colorings.
BinaryPolynomial build_graph_coloring(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  int n = g.node_count;
  int k = inst.params.value("colors", 0);
  auto var = [k](int v, int c) { return v * k + c; };
  double a = 1.0;
  BinaryPolynomial p(n * k);
  for (int v = 0; v < n; ++v) {
    std::vector<int> row;
    for (int c = 0; c < k; ++c)
      row.push_back(var(v, c));
    add_squared_linear(p, row, -1.0, a);
  }
  for (const auto &e : g.edges)
    for (int c = 0; c < k; ++c)
      p.add_term({var(e[0], c), var(e[1], c)}, a);
  return p;
}

// --- traveling_salesman -------------------------------------------------------
// Node 0 pinned to time 0; one-hot per remaining node and time slot; tour
// weight as the cost term. A = B*n*wmax + 1 dominates any weight saving a
// constraint violation could buy.
BinaryPolynomial build_traveling_salesman(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  int n = g.node_count;
  int m = n - 1;
  auto var = [m](int v, int t) { return (v - 1) * m + (t - 1); };
  auto weight = [&g](int u, int v) {
    std::vector<int> key{std::min(u, v), std::max(u, v)};
    auto pos = std::lower_bound(g.edges.begin(), g.edges.end(), key);
    return g.weight_of(static_cast<std::size_t>(pos - g.edges.begin()));
  };
  double a = kPenaltyB * n * max_weight(g) + 1.0;

  BinaryPolynomial p(m * m);
  for (int v = 1; v < n; ++v) {
    std::vector<int> row;
    for (int t = 1; t < n; ++t)
      row.push_back(var(v, t));
    add_squared_linear(p, row, -1.0, a);
  }
  for (int t = 1; t < n; ++t) {
    std::vector<int> col;
    for (int v = 1; v < n; ++v)
      col.push_back(var(v, t));
    add_squared_linear(p, col, -1.0, a);
  }
  for (int v = 1; v < n; ++v) {
    p.add_term({var(v, 1)}, kPenaltyB * weight(0, v));
    p.add_term({var(v, n - 1)}, kPenaltyB * weight(v, 0));
  }
  for (int t = 1; t < n - 1; ++t)
    for (int u = 1; u < n; ++u)
      for (int v = 1; v < n; ++v)
        if (u != v)
          p.add_term({var(u, t), var(v, t + 1)}, kPenaltyB * weight(u, v));
  return p;
}

// --- weighted_minmax_matching ---------------------------------------------------
// Exact cover of the vertex set by edges: A * sum_v (1 - sum_{e in N(v)} x_e)^2
// + B * sum_e w_e x_e, A = B * total weight + 1. Ground states are the
// minimum-weight perfect matchings.
BinaryPolynomial build_matching(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  auto inc = g.incidence();
  double a = kPenaltyB * total_weight(g) + 1.0;
  BinaryPolynomial p(static_cast<int>(g.edges.size()));
  for (int v = 0; v < g.node_count; ++v)
    add_squared_linear(p, inc[static_cast<std::size_t>(v)], -1.0, a);
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    p.add_term({static_cast<int>(e)}, kPenaltyB * g.weight_of(e));
  return p;
}

// --- vertex_cover ---------------------------------------------------------------
// A * sum_{(u,v) in E} (1-x_u)(1-x_v) + B * sum_v x_v with A = B + 1 = 2.
BinaryPolynomial build_vertex_cover(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  double a = kPenaltyB + 1.0;
  BinaryPolynomial p(g.node_count);
  for (const auto &e : g.edges) {
    p.add_constant(a);
    p.add_term({e[0]}, -a);
    p.add_term({e[1]}, -a);
    p.add_term({e[0], e[1]}, a);
  }
  for (int v = 0; v < g.node_count; ++v)
    p.add_term({v}, kPenaltyB);
  return p;
}

// --- edge_cover -----------------------------------------------------------------
// Higher-order coverage constraint: A * sum_v prod_{e in N(v)} (1 - x_e)
// + B * sum_e x_e with A = B + 1 = 2. The product form penalizes a vertex
// exactly when none of its edges is selected, which makes the term order
// grow with the vertex degree.
BinaryPolynomial build_edge_cover(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  auto inc = g.incidence();
  double a = kPenaltyB + 1.0;
  BinaryPolynomial p(static_cast<int>(g.edges.size()));
  for (int v = 0; v < g.node_count; ++v) {
    BinaryPolynomial prod;
    prod.add_constant(a);
    for (int e : inc[static_cast<std::size_t>(v)]) {
      BinaryPolynomial factor;
      factor.add_constant(1.0);
      factor.add_term({e}, -1.0);
      prod = prod.multiply(factor);
    }
    p.add(prod);
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    p.add_term({static_cast<int>(e)}, kPenaltyB);
  return p;
}

// --- max_flow -------------------------------------------------------------------
// Two bits per arc encode f_a in 0..3; capacity penalties cut the encodings
// above cap; conservation penalties square the net flow at internal nodes;
// the objective rewards net outflow at the source. A = 3*B*|arcs| + 1.
BinaryPolynomial build_max_flow(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  int s = inst.params.value("source", 0);
  int t = inst.params.value("sink", g.node_count - 1);
  double a = 3.0 * kPenaltyB * static_cast<double>(g.arcs.size()) + 1.0;
  BinaryPolynomial p(static_cast<int>(2 * g.arcs.size()));

  auto lo = [](int arc) { return 2 * arc; };
  auto hi = [](int arc) { return 2 * arc + 1; };

  for (std::size_t e = 0; e < g.arcs.size(); ++e) {
    int cap = static_cast<int>(g.arcs[e].capacity);
    if (cap > 3)
      throw ParameterError("max_flow formulation supports capacities 0..3");
    int arc = static_cast<int>(e);
    if (cap <= 0) {
      p.add_term({lo(arc)}, a);
      p.add_term({hi(arc)}, a);
    } else if (cap == 1) {
      p.add_term({hi(arc)}, a);
    } else if (cap == 2) {
      p.add_term({lo(arc), hi(arc)}, a);
    } // cap >= 3: every encoding is feasible
  }

  for (int v = 0; v < g.node_count; ++v) {
    if (v == s || v == t)
      continue;
    BinaryPolynomial net;
    for (std::size_t e = 0; e < g.arcs.size(); ++e) {
      int arc = static_cast<int>(e);
      double sign = 0.0;
      if (g.arcs[e].target == v)
        sign = 1.0;
      else if (g.arcs[e].source == v)
        sign = -1.0;
      if (sign != 0.0) {
        net.add_term({lo(arc)}, sign);
        net.add_term({hi(arc)}, 2.0 * sign);
      }
    }
    BinaryPolynomial weight;
    weight.add_constant(a);
    p.add(net.multiply(net).multiply(weight));
  }

  for (std::size_t e = 0; e < g.arcs.size(); ++e) {
    int arc = static_cast<int>(e);
    double sign = 0.0;
    if (g.arcs[e].source == s)
      sign = -1.0; // reward outflow
    else if (g.arcs[e].target == s)
      sign = 1.0;
    if (sign != 0.0) {
      p.add_term({lo(arc)}, kPenaltyB * sign);
      p.add_term({hi(arc)}, 2.0 * kPenaltyB * sign);
    }
  }
  (void)t;
  return p;
}

// --- min_cut --------------------------------------------------------------------
// x_v = 1 puts v on the sink side. A(x_s + 1 - x_t) pins the endpoints,
// B * sum_arcs c_uv (1-x_u) x_v counts the forward cut capacity.
// A = B * total capacity + 1.
BinaryPolynomial build_min_cut(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  int s = inst.params.value("source", 0);
  int t = inst.params.value("sink", g.node_count - 1);
  double total = 0.0;
  for (const auto &arc : g.arcs)
    total += arc.capacity;
  double a = kPenaltyB * total + 1.0;

  BinaryPolynomial p(g.node_count);
  p.add_term({s}, a);
  p.add_constant(a);
  p.add_term({t}, -a);
  for (const auto &arc : g.arcs) {
    p.add_term({arc.target}, kPenaltyB * arc.capacity);
    p.add_term({arc.source, arc.target}, -kPenaltyB * arc.capacity);
  }
  return p;
}

// --- hyper_maxcut ---------------------------------------------------------------
// Sum over edges of -C_e(Z): each term is -1 when the edge is cut and +1
// when monochromatic, so minimizing maximizes the cut count.
BinaryPolynomial build_hyper_maxcut(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  IsingPolynomial h(g.node_count);
  for (const auto &e : g.edges) {
    IsingPolynomial c = hyper_maxcut_edge_term(e);
    h.add_constant(-c.constant());
    for (const auto &[idx, coeff] : c.terms())
      h.add_term(idx, -coeff);
  }
  return h.to_binary();
}

std::vector<int> ones(const std::vector<int> &x, int from, int stride, int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i)
    if (x[static_cast<std::size_t>(from + i * stride)])
      out.push_back(i);
  return out;
}

} // namespace

int qubit_count(const ProblemInstance &inst) {
  const auto &g = inst.graph;
  switch (inst.kind) {
  case ProblemKind::ConnectedComponents:
  case ProblemKind::CommunityDetection:
  case ProblemKind::KClique:
  case ProblemKind::VertexCover:
  case ProblemKind::MinCut:
  case ProblemKind::HyperMaxCut:
    return g.node_count;
  case ProblemKind::GraphIsomorphism:
    return g.node_count * g.node_count;
  case ProblemKind::GraphColoring:
    return g.node_count * inst.params.value("colors", 0);
  case ProblemKind::TravelingSalesman:
    return (g.node_count - 1) * (g.node_count - 1);
  case ProblemKind::WeightedMinMaxMatching:
  case ProblemKind::EdgeCover:
    return static_cast<int>(g.edges.size());
  case ProblemKind::MaxFlow:
    return static_cast<int>(2 * g.arcs.size());
  }
  throw ParameterError("unknown problem kind");
}

BinaryPolynomial build_polynomial(const ProblemInstance &inst) {
  BinaryPolynomial p = [&] {
    switch (inst.kind) {
    case ProblemKind::ConnectedComponents:
      return build_connected_components(inst);
    case ProblemKind::CommunityDetection:
      return build_community_detection(inst);
    case ProblemKind::KClique:
      return build_k_clique(inst);
    case ProblemKind::GraphIsomorphism:
      return build_graph_isomorphism(inst);
    case ProblemKind::GraphColoring:
      return build_graph_coloring(inst);
    case ProblemKind::TravelingSalesman:
      return build_traveling_salesman(inst);
    case ProblemKind::WeightedMinMaxMatching:
      return build_matching(inst);
    case ProblemKind::VertexCover:
      return build_vertex_cover(inst);
    case ProblemKind::EdgeCover:
      return build_edge_cover(inst);
    case ProblemKind::MaxFlow:
      return build_max_flow(inst);
    case ProblemKind::MinCut:
      return build_min_cut(inst);
    case ProblemKind::HyperMaxCut:
      return build_hyper_maxcut(inst);
    }
    throw ParameterError("unknown problem kind");
  }();
  p.set_variable_count(std::max(p.variable_count(), qubit_count(inst)));
  return p;
}

IsingPolynomial hyper_maxcut_edge_term(const std::vector<int> &qubits) {
  int n = static_cast<int>(qubits.size());
  if (n < 2)
    throw ParameterError("hyper_maxcut_edge_term needs an edge of size >= 2");
  if (n > 20)
    throw CapacityError("edge too large for term expansion");
  int m = (n % 2 == 0) ? n : n - 1;
  double denom = std::pow(2.0, n - 2);

  IsingPolynomial h;
  h.add_constant((denom - 1.0) / denom);
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    int bits = static_cast<int>(__builtin_popcountll(mask));
    if (bits % 2 != 0 || bits < 2 || bits > m)
      continue;
    std::vector<int> term;
    for (int b = 0; b < n; ++b)
      if ((mask >> b) & 1ULL)
        term.push_back(qubits[static_cast<std::size_t>(b)]);
    h.add_term(std::move(term), -1.0 / denom);
  }
  return h;
}

ClassicalSolution decode_assignment(const ProblemInstance &inst,
                                    const std::vector<int> &x) {
  const auto &g = inst.graph;
  int n = g.node_count;
  if (static_cast<int>(x.size()) != qubit_count(inst))
    throw ParameterError("assignment length != qubit count");

  Json assignment;
  switch (inst.kind) {
  case ProblemKind::ConnectedComponents:
  case ProblemKind::KClique:
  case ProblemKind::VertexCover:
    assignment = Json{{"vertices", ones(x, 0, 1, n)}};
    break;
  case ProblemKind::CommunityDetection:
  case ProblemKind::HyperMaxCut: {
    std::vector<int> p0, p1;
    int side0 = x[0];
    for (int v = 0; v < n; ++v)
      (x[static_cast<std::size_t>(v)] == side0 ? p0 : p1).push_back(v);
    assignment = Json{{"parts", Json::array({p0, p1})}};
    break;
  }
  case ProblemKind::GraphIsomorphism: {
    std::vector<int> mapping;
    for (int v = 0; v < n; ++v) {
      auto img = ones(x, v * n, 1, n);
      if (img.size() != 1)
        throw ParameterError("assignment is not a one-hot mapping");
      mapping.push_back(img[0]);
    }
    assignment = Json{{"mapping", mapping}};
    break;
  }
  case ProblemKind::GraphColoring: {
    int k = inst.params.value("colors", 0);
    std::vector<int> colors;
    for (int v = 0; v < n; ++v) {
      auto c = ones(x, v * k, 1, k);
      if (c.size() != 1)
        throw ParameterError("assignment is not a one-hot coloring");
      colors.push_back(c[0]);
    }
    assignment = Json{{"colors", colors}};
    break;
  }
  case ProblemKind::TravelingSalesman: {
    int m = n - 1;
    std::vector<int> at_time(static_cast<std::size_t>(n), -1);
    at_time[0] = 0;
    for (int v = 1; v < n; ++v) {
      auto slots = ones(x, (v - 1) * m, 1, m);
      if (slots.size() != 1)
        throw ParameterError("assignment is not a one-hot tour");
      int t = slots[0] + 1;
      if (at_time[static_cast<std::size_t>(t)] != -1)
        throw ParameterError("two nodes share a tour position");
      at_time[static_cast<std::size_t>(t)] = v;
    }
    if (n >= 3 && at_time[1] > at_time[static_cast<std::size_t>(n - 1)])
      std::reverse(at_time.begin() + 1, at_time.end());
    assignment = Json{{"tour", at_time}};
    break;
  }
  case ProblemKind::WeightedMinMaxMatching:
  case ProblemKind::EdgeCover: {
    std::vector<std::vector<int>> edges;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (x[e])
        edges.push_back(g.edges[e]);
    assignment = Json{{"edges", edges}};
    break;
  }
  case ProblemKind::MaxFlow: {
    std::vector<int> flow;
    for (std::size_t e = 0; e < g.arcs.size(); ++e)
      flow.push_back(x[2 * e] + 2 * x[2 * e + 1]);
    assignment = Json{{"flow", flow}};
    break;
  }
  case ProblemKind::MinCut: {
    std::vector<int> side;
    for (int v = 0; v < n; ++v)
      if (!x[static_cast<std::size_t>(v)])
        side.push_back(v);
    assignment = Json{{"source_side", side}};
    break;
  }
  }

  ClassicalSolution sol{std::move(assignment), 0.0};
  auto res = validate_solution(inst, sol);
  if (!res.valid)
    throw DataError("decoded assignment is not a valid " +
                    to_string(inst.kind) + " solution");
  sol.objective = res.objective;
  return sol;
}

ClassicalSolution decode_bitstring(const ProblemInstance &inst,
                                   const std::string &bits) {
  int n = static_cast<int>(bits.size());
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  for (int q = 0; q < n; ++q)
    x[static_cast<std::size_t>(q)] = bits[static_cast<std::size_t>(n - 1 - q)] == '1';
  return decode_assignment(inst, x);
}

} // namespace quopt
