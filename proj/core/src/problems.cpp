#include "quopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "quopt/formulations.hpp"

namespace quopt {

namespace {

struct KindInfo {
  ProblemKind kind;
  const char *name;
};

constexpr KindInfo kKinds[] = {
    {ProblemKind::ConnectedComponents, "connected_components"},
    {ProblemKind::CommunityDetection, "community_detection"},
    {ProblemKind::KClique, "k_clique"},
    {ProblemKind::GraphIsomorphism, "graph_isomorphism"},
    {ProblemKind::GraphColoring, "graph_coloring"},
    {ProblemKind::TravelingSalesman, "traveling_salesman"},
    {ProblemKind::WeightedMinMaxMatching, "weighted_minmax_matching"},
    {ProblemKind::VertexCover, "vertex_cover"},
    {ProblemKind::EdgeCover, "edge_cover"},
    {ProblemKind::MaxFlow, "max_flow"},
    {ProblemKind::MinCut, "min_cut"},
    {ProblemKind::HyperMaxCut, "hyper_maxcut"},
};

int param_int(const Json &params, const std::string &key, int fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->get<int>();
}

double param_double(const Json &params, const std::string &key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->get<double>();
}

std::vector<std::pair<int, int>> all_pairs(const std::vector<int> &nodes) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      out.emplace_back(nodes[i], nodes[j]);
  return out;
}

/// Random spanning tree over `nodes` plus extra edges with probability rho.
void grow_connected(Hypergraph &g, const std::vector<int> &nodes, double rho,
                    Rng &rng) {
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    int parent = nodes[rng.next_index(i)];
    g.add_edge({parent, nodes[i]});
  }
  for (auto [u, v] : all_pairs(nodes))
    if (!g.has_pair_edge(u, v) && rng.next_double() < rho)
      g.add_edge({u, v});
}

Json sorted_vertex_set(std::vector<int> vs) {
  std::sort(vs.begin(), vs.end());
  return Json{{"vertices", vs}};
}

Json canonical_partition(const std::vector<int> &side_of, int node_count) {
  std::vector<int> p0, p1;
  int side0 = side_of[0];
  for (int v = 0; v < node_count; ++v)
    (side_of[static_cast<std::size_t>(v)] == side0 ? p0 : p1).push_back(v);
  return Json{{"parts", Json::array({p0, p1})}};
}

Json edge_list_json(std::vector<std::vector<int>> edges) {
  std::sort(edges.begin(), edges.end());
  return Json{{"edges", edges}};
}

/// Scaled two-community modularity: sum over u<v of
/// (2m * A_uv - d_u * d_v) * s_u * s_v with s = +-1 per side. Integer-valued
/// for unweighted graphs, so optima comparisons are exact.
double scaled_modularity(const Hypergraph &g, const std::vector<int> &side_of) {
  auto deg = g.degrees();
  double two_m = 2.0 * static_cast<double>(g.edges.size());
  double total = 0.0;
  for (int u = 0; u < g.node_count; ++u)
    for (int v = u + 1; v < g.node_count; ++v) {
      double a = g.has_pair_edge(u, v) ? 1.0 : 0.0;
      double c = two_m * a - static_cast<double>(deg[static_cast<std::size_t>(u)]) *
                                 static_cast<double>(deg[static_cast<std::size_t>(v)]);
      double s = (side_of[static_cast<std::size_t>(u)] ==
                  side_of[static_cast<std::size_t>(v)])
                     ? 1.0
                     : -1.0;
      total += c * s;
    }
  return total;
}

int hyper_cut_value(const Hypergraph &g, const std::vector<int> &side_of) {
  int cut = 0;
  for (const auto &e : g.edges) {
    bool any0 = false, any1 = false;
    for (int v : e)
      (side_of[static_cast<std::size_t>(v)] ? any1 : any0) = true;
    if (any0 && any1)
      ++cut;
  }
  return cut;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

GeneratedInstance gen_connected_components(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 6);
  double rho = param_double(p, "density", 0.4);
  if (n < 4)
    throw ParameterError("connected_components needs nodes >= 4");
  Rng rng(mix_seed(seed, 1));

  int comp_size = static_cast<int>(rng.uniform_int(2, n - 2));
  std::vector<int> others(static_cast<std::size_t>(n - 1));
  std::iota(others.begin(), others.end(), 1);
  rng.shuffle(others);
  std::vector<int> comp{0};
  comp.insert(comp.end(), others.begin(), others.begin() + comp_size - 1);
  std::vector<int> rest(others.begin() + comp_size - 1, others.end());

  Hypergraph g(n);
  grow_connected(g, comp, rho, rng);
  if (rest.size() >= 2)
    for (auto [u, v] : all_pairs(rest))
      if (rng.next_double() < rho)
        g.add_edge({u, v});

  ProblemInstance inst{ProblemKind::ConnectedComponents, std::move(g),
                       Json{{"fixed_node", 0}}, seed};
  std::sort(comp.begin(), comp.end());
  return {std::move(inst),
          {sorted_vertex_set(comp), static_cast<double>(comp.size())}};
}

GeneratedInstance gen_community_detection(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 6);
  double rho = param_double(p, "intra_density", 0.8);
  int inter = param_int(p, "inter_edges", 1);
  if (n < 4)
    throw ParameterError("community_detection needs nodes >= 4");
  Rng rng(mix_seed(seed, 2));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<int> block_a(order.begin(), order.begin() + (n + 1) / 2);
  std::vector<int> block_b(order.begin() + (n + 1) / 2, order.end());

  Hypergraph g(n);
  grow_connected(g, block_a, rho, rng);
  grow_connected(g, block_b, rho, rng);
  for (int i = 0; i < inter; ++i) {
    for (int tries = 0; tries < 64; ++tries) {
      int u = block_a[rng.next_index(block_a.size())];
      int v = block_b[rng.next_index(block_b.size())];
      if (!g.has_pair_edge(u, v)) {
        g.add_edge({u, v});
        break;
      }
    }
  }

  std::vector<int> side(static_cast<std::size_t>(n), 1);
  for (int v : block_a)
    side[static_cast<std::size_t>(v)] = 0;
  double planted_obj = scaled_modularity(g, side);
  ProblemInstance inst{ProblemKind::CommunityDetection, std::move(g),
                       Json::object(), seed};
  return {std::move(inst),
          {canonical_partition(side, n), planted_obj}};
}

GeneratedInstance gen_k_clique(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 6);
  int k = param_int(p, "k", 3);
  double rho = param_double(p, "density", 0.3);
  if (k < 2 || k > n)
    throw ParameterError("k_clique needs 2 <= k <= nodes");
  Rng rng(mix_seed(seed, 3));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<int> clique(order.begin(), order.begin() + k);

  Hypergraph g(n);
  for (auto [u, v] : all_pairs(clique))
    g.add_edge({u, v});
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (auto [u, v] : all_pairs(all))
    if (!g.has_pair_edge(u, v) && rng.next_double() < rho)
      g.add_edge({u, v});

  ProblemInstance inst{ProblemKind::KClique, std::move(g), Json{{"k", k}},
                       seed};
  return {std::move(inst), {sorted_vertex_set(clique), 0.0}};
}

GeneratedInstance gen_graph_isomorphism(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 3);
  double rho = param_double(p, "density", 0.5);
  if (n < 2)
    throw ParameterError("graph_isomorphism needs nodes >= 2");
  Rng rng(mix_seed(seed, 4));

  Hypergraph g1(n);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (auto [u, v] : all_pairs(all))
    if (rng.next_double() < rho)
      g1.add_edge({u, v});
  if (g1.edges.empty())
    g1.add_edge({0, 1});

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);

  std::vector<std::vector<int>> edges2;
  for (const auto &e : g1.edges) {
    std::vector<int> mapped{perm[static_cast<std::size_t>(e[0])],
                            perm[static_cast<std::size_t>(e[1])]};
    std::sort(mapped.begin(), mapped.end());
    edges2.push_back(std::move(mapped));
  }
  std::sort(edges2.begin(), edges2.end());

  ProblemInstance inst{ProblemKind::GraphIsomorphism, std::move(g1),
                       Json{{"edges2", edges2}}, seed};
  return {std::move(inst), {Json{{"mapping", perm}}, 0.0}};
}

GeneratedInstance gen_graph_coloring(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 4);
  int k = param_int(p, "colors", 3);
  double rho = param_double(p, "density", 0.5);
  if (k < 2 || n < 2)
    throw ParameterError("graph_coloring needs nodes >= 2 and colors >= 2");
  Rng rng(mix_seed(seed, 5));

  std::vector<int> color(static_cast<std::size_t>(n));
  for (auto &c : color)
    c = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(k)));
  if (std::set<int>(color.begin(), color.end()).size() < 2)
    color[1] = (color[0] + 1) % k;

  Hypergraph g(n);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (auto [u, v] : all_pairs(all))
    if (color[static_cast<std::size_t>(u)] != color[static_cast<std::size_t>(v)] &&
        rng.next_double() < rho)
      g.add_edge({u, v});
  if (g.edges.empty()) {
    for (auto [u, v] : all_pairs(all))
      if (color[static_cast<std::size_t>(u)] !=
          color[static_cast<std::size_t>(v)]) {
        g.add_edge({u, v});
        break;
      }
  }

  ProblemInstance inst{ProblemKind::GraphColoring, std::move(g),
                       Json{{"colors", k}}, seed};
  return {std::move(inst), {Json{{"colors", color}}, 0.0}};
}

GeneratedInstance gen_traveling_salesman(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 4);
  int wmax = param_int(p, "max_weight", 10);
  if (n < 3)
    throw ParameterError("traveling_salesman needs nodes >= 3");
  Rng rng(mix_seed(seed, 6));

  Hypergraph g(n);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (auto [u, v] : all_pairs(all))
    g.add_edge({u, v}, static_cast<double>(rng.uniform_int(1, wmax)));

  std::vector<int> tour(all);
  double cost = 0.0;
  for (int i = 0; i < n; ++i) {
    auto pos = std::lower_bound(
        g.edges.begin(), g.edges.end(),
        std::vector<int>{std::min(tour[static_cast<std::size_t>(i)],
                                   tour[static_cast<std::size_t>((i + 1) % n)]),
                          std::max(tour[static_cast<std::size_t>(i)],
                                   tour[static_cast<std::size_t>((i + 1) % n)])});
    cost += g.edge_weights[static_cast<std::size_t>(pos - g.edges.begin())];
  }

  ProblemInstance inst{ProblemKind::TravelingSalesman, std::move(g),
                       Json::object(), seed};
  return {std::move(inst), {Json{{"tour", tour}}, cost}};
}

GeneratedInstance gen_weighted_minmax_matching(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 6);
  double rho = param_double(p, "extra_density", 0.3);
  int max_edges = param_int(p, "max_edges", 10);
  int wmax = param_int(p, "max_weight", 10);
  if (n < 4 || n % 2 != 0)
    throw ParameterError("weighted_minmax_matching needs even nodes >= 4");
  Rng rng(mix_seed(seed, 7));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  Hypergraph g(n);
  std::vector<std::vector<int>> matching;
  double matching_weight = 0.0;
  for (int i = 0; i < n; i += 2) {
    double w = static_cast<double>(rng.uniform_int(1, wmax));
    std::vector<int> e{std::min(order[static_cast<std::size_t>(i)],
                                order[static_cast<std::size_t>(i + 1)]),
                       std::max(order[static_cast<std::size_t>(i)],
                                order[static_cast<std::size_t>(i + 1)])};
    g.add_edge(e, w);
    matching.push_back(e);
    matching_weight += w;
  }
  for (auto [u, v] : all_pairs(order)) {
    if (static_cast<int>(g.edges.size()) >= max_edges)
      break;
    if (!g.has_pair_edge(u, v) && rng.next_double() < rho)
      g.add_edge({u, v}, static_cast<double>(rng.uniform_int(1, wmax)));
  }

  ProblemInstance inst{ProblemKind::WeightedMinMaxMatching, std::move(g),
                       Json::object(), seed};
  return {std::move(inst), {edge_list_json(matching), matching_weight}};
}

GeneratedInstance gen_vertex_cover(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 6);
  double rho = param_double(p, "density", 0.4);
  if (n < 2)
    throw ParameterError("vertex_cover needs nodes >= 2");
  Rng rng(mix_seed(seed, 8));

  Hypergraph g(n);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (auto [u, v] : all_pairs(all))
    if (rng.next_double() < rho)
      g.add_edge({u, v});
  if (g.edges.empty())
    g.add_edge({0, 1});

  std::vector<int> touched;
  for (int v = 0; v < n; ++v)
    for (const auto &e : g.edges)
      if (e[0] == v || e[1] == v) {
        touched.push_back(v);
        break;
      }

  ProblemInstance inst{ProblemKind::VertexCover, std::move(g), Json::object(),
                       seed};
  return {std::move(inst),
          {sorted_vertex_set(touched), static_cast<double>(touched.size())}};
}

GeneratedInstance gen_edge_cover(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 5);
  double rho = param_double(p, "density", 0.4);
  int max_edges = param_int(p, "max_edges", 10);
  if (n < 2)
    throw ParameterError("edge_cover needs nodes >= 2");
  Rng rng(mix_seed(seed, 9));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  Hypergraph g(n);
  std::vector<std::vector<int>> cover;
  for (int i = 0; i + 1 < n; i += 2) {
    std::vector<int> e{std::min(order[static_cast<std::size_t>(i)],
                                order[static_cast<std::size_t>(i + 1)]),
                       std::max(order[static_cast<std::size_t>(i)],
                                order[static_cast<std::size_t>(i + 1)])};
    g.add_edge(e);
    cover.push_back(e);
  }
  if (n % 2 == 1) {
    int last = order.back();
    int partner = order[0];
    std::vector<int> e{std::min(last, partner), std::max(last, partner)};
    if (!g.has_edge(e))
      g.add_edge(e);
    cover.push_back(e);
  }
  for (auto [u, v] : all_pairs(order)) {
    if (static_cast<int>(g.edges.size()) >= max_edges)
      break;
    if (!g.has_pair_edge(u, v) && rng.next_double() < rho)
      g.add_edge({u, v});
  }

  ProblemInstance inst{ProblemKind::EdgeCover, std::move(g), Json::object(),
                       seed};
  return {std::move(inst),
          {edge_list_json(cover), static_cast<double>(cover.size())}};
}

GeneratedInstance gen_max_flow(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 4);
  int max_arcs = param_int(p, "max_arcs", 5);
  int cap_max = param_int(p, "max_capacity", 3);
  double rho = param_double(p, "arc_density", 0.6);
  if (n < 3)
    throw ParameterError("max_flow needs nodes >= 3");
  if (cap_max < 1 || cap_max > 3)
    throw ParameterError("max_flow capacities are limited to 1..3");
  Rng rng(mix_seed(seed, 10));

  int s = 0, t = n - 1;
  Hypergraph g(n);
  g.source = s;
  g.sink = t;
  g.add_arc(s, 1, static_cast<double>(rng.uniform_int(1, cap_max)));
  g.add_arc(1, t, static_cast<double>(rng.uniform_int(1, cap_max)));

  std::vector<std::pair<int, int>> candidates;
  for (int j = 2; j < t; ++j) {
    candidates.emplace_back(s, j);
    candidates.emplace_back(j, t);
  }
  for (int i = 1; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      candidates.emplace_back(i, j);
  candidates.emplace_back(s, t);
  rng.shuffle(candidates);
  for (auto [u, v] : candidates) {
    if (static_cast<int>(g.arcs.size()) >= max_arcs)
      break;
    if (rng.next_double() < rho)
      g.add_arc(u, v, static_cast<double>(rng.uniform_int(1, cap_max)));
  }

  std::vector<int> flow(g.arcs.size(), 0);
  flow[0] = 1;
  flow[1] = 1;
  ProblemInstance inst{ProblemKind::MaxFlow, std::move(g),
                       Json{{"source", s}, {"sink", t}}, seed};
  return {std::move(inst), {Json{{"flow", flow}}, 1.0}};
}

GeneratedInstance gen_min_cut(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 5);
  int max_arcs = param_int(p, "max_arcs", 8);
  int cap_max = param_int(p, "max_capacity", 10);
  double rho = param_double(p, "arc_density", 0.5);
  if (n < 3)
    throw ParameterError("min_cut needs nodes >= 3");
  Rng rng(mix_seed(seed, 11));

  int s = 0, t = n - 1;
  Hypergraph g(n);
  g.source = s;
  g.sink = t;
  g.add_arc(s, 1, static_cast<double>(rng.uniform_int(1, cap_max)));
  g.add_arc(1, t, static_cast<double>(rng.uniform_int(1, cap_max)));

  std::vector<std::pair<int, int>> candidates;
  for (int j = 2; j < t; ++j) {
    candidates.emplace_back(s, j);
    candidates.emplace_back(j, t);
  }
  for (int i = 1; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      candidates.emplace_back(i, j);
  candidates.emplace_back(s, t);
  rng.shuffle(candidates);
  for (auto [u, v] : candidates) {
    if (static_cast<int>(g.arcs.size()) >= max_arcs)
      break;
    if (rng.next_double() < rho)
      g.add_arc(u, v, static_cast<double>(rng.uniform_int(1, cap_max)));
  }

  double cut = 0.0;
  for (const auto &a : g.arcs)
    if (a.source == s)
      cut += a.capacity;
  ProblemInstance inst{ProblemKind::MinCut, std::move(g),
                       Json{{"source", s}, {"sink", t}}, seed};
  return {std::move(inst), {Json{{"source_side", Json::array({s})}}, cut}};
}

GeneratedInstance gen_hyper_maxcut(const Json &p, std::uint64_t seed) {
  int n = param_int(p, "nodes", 4);
  int edge_count = param_int(p, "edges", 3);
  int max_edge_size = param_int(p, "max_edge_size", 3);
  if (n < 2 || edge_count < 1)
    throw ParameterError("hyper_maxcut needs nodes >= 2 and edges >= 1");
  if (max_edge_size < 2)
    throw ParameterError("hyper_maxcut needs max_edge_size >= 2");
  max_edge_size = std::min(max_edge_size, n);
  Rng rng(mix_seed(seed, 12));

  std::vector<int> side(static_cast<std::size_t>(n));
  for (auto &x : side)
    x = static_cast<int>(rng.next_index(2));
  side[0] = 0;
  if (std::count(side.begin(), side.end(), 1) == 0)
    side[static_cast<std::size_t>(n - 1)] = 1;

  // Every edge is cut by the planted partition, so the planted partition
  // attains the maximum possible cut value |E|.
  Hypergraph g(n);
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (int e = 0; e < edge_count; ++e) {
    bool added = false;
    for (int tries = 0; tries < 256 && !added; ++tries) {
      int size = static_cast<int>(rng.uniform_int(2, max_edge_size));
      std::vector<int> pick(all);
      rng.shuffle(pick);
      std::vector<int> edge(pick.begin(), pick.begin() + size);
      std::sort(edge.begin(), edge.end());
      bool any0 = false, any1 = false;
      for (int v : edge)
        (side[static_cast<std::size_t>(v)] ? any1 : any0) = true;
      if (any0 && any1 && !g.has_edge(edge)) {
        g.add_edge(edge);
        added = true;
      }
    }
    if (!added)
      throw ParameterError("hyper_maxcut generator could not place " +
                           std::to_string(edge_count) + " distinct cut edges");
  }

  ProblemInstance inst{ProblemKind::HyperMaxCut, std::move(g), Json::object(),
                       seed};
  return {std::move(inst),
          {canonical_partition(side, n),
           static_cast<double>(edge_count)}};
}

// ---------------------------------------------------------------------------
// Validators
// ---------------------------------------------------------------------------

std::vector<int> get_int_array(const Json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array())
    throw ParameterError(std::string("solution is missing array field '") +
                         key + "'");
  std::vector<int> out;
  for (const auto &v : *it) {
    if (!v.is_number_integer())
      throw ParameterError(std::string("field '") + key +
                           "' must contain integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::vector<int>> get_edge_array(const Json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array())
    throw ParameterError(std::string("solution is missing array field '") +
                         key + "'");
  std::vector<std::vector<int>> out;
  for (const auto &v : *it) {
    if (!v.is_array())
      throw ParameterError(std::string("field '") + key +
                           "' must contain node lists");
    std::vector<int> e;
    for (const auto &x : v)
      e.push_back(x.get<int>());
    std::sort(e.begin(), e.end());
    out.push_back(std::move(e));
  }
  return out;
}

bool in_range(const std::vector<int> &vs, int n) {
  return std::all_of(vs.begin(), vs.end(),
                     [n](int v) { return v >= 0 && v < n; });
}

bool is_connected_subset(const Hypergraph &g, const std::vector<int> &subset) {
  if (subset.empty())
    return false;
  std::set<int> in(subset.begin(), subset.end());
  std::set<int> seen{subset[0]};
  std::vector<int> stack{subset[0]};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto &e : g.edges) {
      if (e.size() != 2)
        continue;
      int other = -1;
      if (e[0] == v)
        other = e[1];
      else if (e[1] == v)
        other = e[0];
      if (other >= 0 && in.count(other) && !seen.count(other)) {
        seen.insert(other);
        stack.push_back(other);
      }
    }
  }
  return seen.size() == in.size();
}

ValidationResult validate_connected_components(const ProblemInstance &inst,
                                               const Json &a) {
  auto vs = get_int_array(a, "vertices");
  const auto &g = inst.graph;
  int f = inst.params.value("fixed_node", 0);
  if (!in_range(vs, g.node_count))
    return {false, 0.0};
  std::set<int> in(vs.begin(), vs.end());
  if (in.size() != vs.size() || !in.count(f))
    return {false, 0.0};
  if (!is_connected_subset(g, vs))
    return {false, 0.0};
  for (const auto &e : g.edges)
    if (in.count(e[0]) != in.count(e[1]))
      return {false, 0.0}; // boundary edge: not a full component
  return {true, static_cast<double>(vs.size())};
}

ValidationResult validate_partition(const ProblemInstance &inst, const Json &a,
                                    bool modularity_objective) {
  auto it = a.find("parts");
  if (it == a.end() || !it->is_array() || it->size() != 2)
    throw ParameterError("partition solution needs a 2-element 'parts' array");
  std::vector<int> p0, p1;
  for (const auto &v : (*it)[0])
    p0.push_back(v.get<int>());
  for (const auto &v : (*it)[1])
    p1.push_back(v.get<int>());
  int n = inst.graph.node_count;
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (int v : p0) {
    if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1)
      return {false, 0.0};
    side[static_cast<std::size_t>(v)] = 0;
  }
  for (int v : p1) {
    if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1)
      return {false, 0.0};
    side[static_cast<std::size_t>(v)] = 1;
  }
  if (std::count(side.begin(), side.end(), -1) != 0)
    return {false, 0.0};
  double obj = modularity_objective
                   ? scaled_modularity(inst.graph, side)
                   : static_cast<double>(hyper_cut_value(inst.graph, side));
  return {true, obj};
}

ValidationResult validate_k_clique(const ProblemInstance &inst, const Json &a) {
  auto vs = get_int_array(a, "vertices");
  int k = inst.params.value("k", 0);
  if (!in_range(vs, inst.graph.node_count))
    return {false, 0.0};
  std::set<int> in(vs.begin(), vs.end());
  if (static_cast<int>(in.size()) != k || in.size() != vs.size())
    return {false, 0.0};
  for (auto [u, v] : all_pairs(std::vector<int>(in.begin(), in.end())))
    if (!inst.graph.has_pair_edge(u, v))
      return {false, 0.0};
  return {true, 0.0};
}

ValidationResult validate_graph_isomorphism(const ProblemInstance &inst,
                                            const Json &a) {
  auto f = get_int_array(a, "mapping");
  int n = inst.graph.node_count;
  if (static_cast<int>(f.size()) != n)
    throw ParameterError("mapping length must equal node count");
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (int v : f) {
    if (v < 0 || v >= n || hit[static_cast<std::size_t>(v)])
      return {false, 0.0};
    hit[static_cast<std::size_t>(v)] = 1;
  }
  Hypergraph g2 = inst.second_graph();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool e1 = inst.graph.has_pair_edge(u, v);
      bool e2 = g2.has_pair_edge(f[static_cast<std::size_t>(u)],
                                 f[static_cast<std::size_t>(v)]);
      if (e1 != e2)
        return {false, 0.0};
    }
  return {true, 0.0};
}

ValidationResult validate_graph_coloring(const ProblemInstance &inst,
                                         const Json &a) {
  auto colors = get_int_array(a, "colors");
  int n = inst.graph.node_count;
  int k = inst.params.value("colors", 0);
  if (static_cast<int>(colors.size()) != n)
    throw ParameterError("colors length must equal node count");
  for (int c : colors)
    if (c < 0 || c >= k)
      return {false, 0.0};
  for (const auto &e : inst.graph.edges)
    if (colors[static_cast<std::size_t>(e[0])] ==
        colors[static_cast<std::size_t>(e[1])])
      return {false, 0.0};
  return {true, 0.0};
}

double tour_cost(const Hypergraph &g, const std::vector<int> &tour) {
  double cost = 0.0;
  int n = static_cast<int>(tour.size());
  for (int i = 0; i < n; ++i) {
    int u = tour[static_cast<std::size_t>(i)];
    int v = tour[static_cast<std::size_t>((i + 1) % n)];
    std::vector<int> key{std::min(u, v), std::max(u, v)};
    auto pos = std::lower_bound(g.edges.begin(), g.edges.end(), key);
    if (pos == g.edges.end() || *pos != key)
      return -1.0;
    cost += g.weight_of(static_cast<std::size_t>(pos - g.edges.begin()));
  }
  return cost;
}

ValidationResult validate_traveling_salesman(const ProblemInstance &inst,
                                             const Json &a) {
  auto tour = get_int_array(a, "tour");
  int n = inst.graph.node_count;
  if (static_cast<int>(tour.size()) != n)
    throw ParameterError("tour length must equal node count");
  if (tour[0] != 0)
    return {false, 0.0};
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (int v : tour) {
    if (v < 0 || v >= n || hit[static_cast<std::size_t>(v)])
      return {false, 0.0};
    hit[static_cast<std::size_t>(v)] = 1;
  }
  double cost = tour_cost(inst.graph, tour);
  if (cost < 0.0)
    return {false, 0.0};
  return {true, cost};
}

ValidationResult validate_matching(const ProblemInstance &inst, const Json &a) {
  auto edges = get_edge_array(a, "edges");
  const auto &g = inst.graph;
  std::vector<char> covered(static_cast<std::size_t>(g.node_count), 0);
  double weight = 0.0;
  for (const auto &e : edges) {
    if (e.size() != 2 || !g.has_edge(e))
      return {false, 0.0};
    for (int v : e) {
      if (covered[static_cast<std::size_t>(v)])
        return {false, 0.0}; // two matched edges share a vertex
      covered[static_cast<std::size_t>(v)] = 1;
    }
    auto pos = std::lower_bound(g.edges.begin(), g.edges.end(), e);
    weight += g.weight_of(static_cast<std::size_t>(pos - g.edges.begin()));
  }
  if (std::count(covered.begin(), covered.end(), 0) != 0)
    return {false, 0.0}; // not a perfect matching
  return {true, weight};
}

ValidationResult validate_vertex_cover(const ProblemInstance &inst,
                                       const Json &a) {
  auto vs = get_int_array(a, "vertices");
  if (!in_range(vs, inst.graph.node_count))
    return {false, 0.0};
  std::set<int> in(vs.begin(), vs.end());
  if (in.size() != vs.size())
    return {false, 0.0};
  for (const auto &e : inst.graph.edges)
    if (!in.count(e[0]) && !in.count(e[1]))
      return {false, 0.0};
  return {true, static_cast<double>(in.size())};
}

ValidationResult validate_edge_cover(const ProblemInstance &inst,
                                     const Json &a) {
  auto edges = get_edge_array(a, "edges");
  const auto &g = inst.graph;
  std::vector<char> covered(static_cast<std::size_t>(g.node_count), 0);
  std::set<std::vector<int>> used;
  for (const auto &e : edges) {
    if (!g.has_edge(e) || used.count(e))
      return {false, 0.0};
    used.insert(e);
    for (int v : e)
      covered[static_cast<std::size_t>(v)] = 1;
  }
  if (std::count(covered.begin(), covered.end(), 0) != 0)
    return {false, 0.0};
  return {true, static_cast<double>(edges.size())};
}

ValidationResult validate_max_flow(const ProblemInstance &inst, const Json &a) {
  auto flow = get_int_array(a, "flow");
  const auto &g = inst.graph;
  if (flow.size() != g.arcs.size())
    throw ParameterError("flow length must equal arc count");
  int s = inst.params.value("source", 0);
  int t = inst.params.value("sink", g.node_count - 1);
  for (std::size_t i = 0; i < flow.size(); ++i)
    if (flow[i] < 0 || static_cast<double>(flow[i]) > g.arcs[i].capacity)
      return {false, 0.0};
  std::vector<int> net(static_cast<std::size_t>(g.node_count), 0);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    net[static_cast<std::size_t>(g.arcs[i].source)] -= flow[i];
    net[static_cast<std::size_t>(g.arcs[i].target)] += flow[i];
  }
  for (int v = 0; v < g.node_count; ++v)
    if (v != s && v != t && net[static_cast<std::size_t>(v)] != 0)
      return {false, 0.0};
  return {true, static_cast<double>(-net[static_cast<std::size_t>(s)])};
}

ValidationResult validate_min_cut(const ProblemInstance &inst, const Json &a) {
  auto vs = get_int_array(a, "source_side");
  const auto &g = inst.graph;
  int s = inst.params.value("source", 0);
  int t = inst.params.value("sink", g.node_count - 1);
  if (!in_range(vs, g.node_count))
    return {false, 0.0};
  std::set<int> in(vs.begin(), vs.end());
  if (in.size() != vs.size() || !in.count(s) || in.count(t))
    return {false, 0.0};
  double cut = 0.0;
  for (const auto &arc : g.arcs)
    if (in.count(arc.source) && !in.count(arc.target))
      cut += arc.capacity;
  return {true, cut};
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

bool kind_maximizes(ProblemKind kind) {
  switch (kind) {
  case ProblemKind::CommunityDetection:
  case ProblemKind::MaxFlow:
  case ProblemKind::HyperMaxCut:
    return true;
  default:
    return false;
  }
}

void check_space(double configurations) {
  if (configurations > static_cast<double>(1 << 20))
    throw CapacityError("brute force search space exceeds 2^20 configurations");
}

/// Collects `candidate` into `best` under min/max objective semantics.
struct OptimaCollector {
  bool maximize;
  bool any = false;
  double best = 0.0;
  std::map<std::string, ClassicalSolution> solutions;

  void offer(ClassicalSolution sol) {
    if (!any || (maximize ? sol.objective > best : sol.objective < best)) {
      any = true;
      best = sol.objective;
      solutions.clear();
    } else if (sol.objective != best) {
      return;
    }
    solutions.emplace(sol.key(), std::move(sol));
  }

  std::vector<ClassicalSolution> take() {
    std::vector<ClassicalSolution> out;
    out.reserve(solutions.size());
    for (auto &[_, sol] : solutions)
      out.push_back(std::move(sol));
    return out;
  }
};

std::vector<int> bits_to_subset(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1ULL)
      out.push_back(v);
  return out;
}

} // namespace

const std::vector<ProblemKind> &all_problem_kinds() {
  static const std::vector<ProblemKind> kinds = [] {
    std::vector<ProblemKind> v;
    for (const auto &k : kKinds)
      v.push_back(k.kind);
    return v;
  }();
  return kinds;
}

std::string to_string(ProblemKind kind) {
  for (const auto &k : kKinds)
    if (k.kind == kind)
      return k.name;
  throw ParameterError("unknown problem kind");
}

ProblemKind problem_kind_from_string(const std::string &name) {
  for (const auto &k : kKinds)
    if (name == k.name)
      return k.kind;
  throw ParameterError("unknown problem kind: " + name);
}

Hypergraph ProblemInstance::second_graph() const {
  if (kind != ProblemKind::GraphIsomorphism)
    throw ParameterError("second_graph is only defined for graph_isomorphism");
  Hypergraph g2(graph.node_count);
  for (const auto &e : params.at("edges2"))
    g2.add_edge(e.get<std::vector<int>>());
  return g2;
}

bool ProblemInstance::operator==(const ProblemInstance &other) const {
  return kind == other.kind && graph == other.graph && params == other.params &&
         seed == other.seed;
}

Json default_size_params(ProblemKind kind) {
  switch (kind) {
  case ProblemKind::ConnectedComponents:
    return {{"nodes", 6}, {"density", 0.4}};
  case ProblemKind::CommunityDetection:
    return {{"nodes", 6}, {"intra_density", 0.8}, {"inter_edges", 1}};
  case ProblemKind::KClique:
    return {{"nodes", 6}, {"k", 3}, {"density", 0.3}};
  case ProblemKind::GraphIsomorphism:
    return {{"nodes", 3}, {"density", 0.5}};
  case ProblemKind::GraphColoring:
    return {{"nodes", 4}, {"colors", 3}, {"density", 0.5}};
  case ProblemKind::TravelingSalesman:
    return {{"nodes", 4}, {"max_weight", 10}};
  case ProblemKind::WeightedMinMaxMatching:
    return {{"nodes", 6}, {"extra_density", 0.3}, {"max_edges", 10},
            {"max_weight", 10}};
  case ProblemKind::VertexCover:
    return {{"nodes", 6}, {"density", 0.4}};
  case ProblemKind::EdgeCover:
    return {{"nodes", 5}, {"density", 0.4}, {"max_edges", 10}};
  case ProblemKind::MaxFlow:
    return {{"nodes", 4}, {"max_arcs", 5}, {"max_capacity", 3},
            {"arc_density", 0.6}};
  case ProblemKind::MinCut:
    return {{"nodes", 5}, {"max_arcs", 8}, {"max_capacity", 10},
            {"arc_density", 0.5}};
  case ProblemKind::HyperMaxCut:
    return {{"nodes", 4}, {"edges", 3}, {"max_edge_size", 3}};
  }
  throw ParameterError("unknown problem kind");
}

GeneratedInstance generate_instance_with_planted(ProblemKind kind,
                                                 const Json &size_params,
                                                 std::uint64_t seed,
                                                 int qubit_cap) {
  Json params = default_size_params(kind);
  for (auto it = size_params.begin(); it != size_params.end(); ++it)
    params[it.key()] = it.value();

  GeneratedInstance gen = [&] {
    switch (kind) {
    case ProblemKind::ConnectedComponents:
      return gen_connected_components(params, seed);
    case ProblemKind::CommunityDetection:
      return gen_community_detection(params, seed);
    case ProblemKind::KClique:
      return gen_k_clique(params, seed);
    case ProblemKind::GraphIsomorphism:
      return gen_graph_isomorphism(params, seed);
    case ProblemKind::GraphColoring:
      return gen_graph_coloring(params, seed);
    case ProblemKind::TravelingSalesman:
      return gen_traveling_salesman(params, seed);
    case ProblemKind::WeightedMinMaxMatching:
      return gen_weighted_minmax_matching(params, seed);
    case ProblemKind::VertexCover:
      return gen_vertex_cover(params, seed);
    case ProblemKind::EdgeCover:
      return gen_edge_cover(params, seed);
    case ProblemKind::MaxFlow:
      return gen_max_flow(params, seed);
    case ProblemKind::MinCut:
      return gen_min_cut(params, seed);
    case ProblemKind::HyperMaxCut:
      return gen_hyper_maxcut(params, seed);
    }
    throw ParameterError("unknown problem kind");
  }();

  gen.instance.graph.check();
  int qubits = qubit_count(gen.instance);
  if (qubits > qubit_cap)
    throw CapacityError("instance needs " + std::to_string(qubits) +
                        " qubits, cap is " + std::to_string(qubit_cap));
  return gen;
}

ProblemInstance generate_instance(ProblemKind kind, const Json &size_params,
                                  std::uint64_t seed, int qubit_cap) {
  return generate_instance_with_planted(kind, size_params, seed, qubit_cap)
      .instance;
}

ValidationResult validate_solution(const ProblemInstance &instance,
                                   const ClassicalSolution &candidate) {
  const Json &a = candidate.assignment;
  if (!a.is_object())
    throw ParameterError("solution assignment must be a JSON object");
  switch (instance.kind) {
  case ProblemKind::ConnectedComponents:
    return validate_connected_components(instance, a);
  case ProblemKind::CommunityDetection:
    return validate_partition(instance, a, /*modularity_objective=*/true);
  case ProblemKind::KClique:
    return validate_k_clique(instance, a);
  case ProblemKind::GraphIsomorphism:
    return validate_graph_isomorphism(instance, a);
  case ProblemKind::GraphColoring:
    return validate_graph_coloring(instance, a);
  case ProblemKind::TravelingSalesman:
    return validate_traveling_salesman(instance, a);
  case ProblemKind::WeightedMinMaxMatching:
    return validate_matching(instance, a);
  case ProblemKind::VertexCover:
    return validate_vertex_cover(instance, a);
  case ProblemKind::EdgeCover:
    return validate_edge_cover(instance, a);
  case ProblemKind::MaxFlow:
    return validate_max_flow(instance, a);
  case ProblemKind::MinCut:
    return validate_min_cut(instance, a);
  case ProblemKind::HyperMaxCut:
    return validate_partition(instance, a, /*modularity_objective=*/false);
  }
  throw ParameterError("unknown problem kind");
}

std::vector<ClassicalSolution> brute_force_optimum(const ProblemInstance &inst) {
  const Hypergraph &g = inst.graph;
  int n = g.node_count;
  OptimaCollector collect{kind_maximizes(inst.kind)};

  auto try_candidate = [&](Json assignment) {
    ClassicalSolution sol{std::move(assignment), 0.0};
    auto res = validate_solution(inst, sol);
    if (res.valid) {
      sol.objective = res.objective;
      collect.offer(std::move(sol));
    }
  };

  switch (inst.kind) {
  case ProblemKind::ConnectedComponents:
  case ProblemKind::KClique:
  case ProblemKind::VertexCover: {
    check_space(std::pow(2.0, n));
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask)
      try_candidate(Json{{"vertices", bits_to_subset(mask, n)}});
    break;
  }
  case ProblemKind::CommunityDetection:
  case ProblemKind::HyperMaxCut: {
    check_space(std::pow(2.0, n - 1));
    // Node 0 fixed to part 0: each unordered partition appears once.
    for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask) {
      std::vector<int> side(static_cast<std::size_t>(n), 0);
      for (int v = 1; v < n; ++v)
        side[static_cast<std::size_t>(v)] =
            static_cast<int>((mask >> (v - 1)) & 1ULL);
      try_candidate(canonical_partition(side, n));
    }
    break;
  }
  case ProblemKind::GraphIsomorphism: {
    double space = 1.0;
    for (int i = 2; i <= n; ++i)
      space *= i;
    check_space(space);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      try_candidate(Json{{"mapping", perm}});
    } while (std::next_permutation(perm.begin(), perm.end()));
    break;
  }
  case ProblemKind::GraphColoring: {
    int k = inst.params.value("colors", 0);
    check_space(std::pow(static_cast<double>(k), n));
    std::vector<int> colors(static_cast<std::size_t>(n), 0);
    while (true) {
      try_candidate(Json{{"colors", colors}});
      int i = 0;
      while (i < n && ++colors[static_cast<std::size_t>(i)] == k)
        colors[static_cast<std::size_t>(i++)] = 0;
      if (i == n)
        break;
    }
    break;
  }
  case ProblemKind::TravelingSalesman: {
    double space = 1.0;
    for (int i = 2; i < n; ++i)
      space *= i;
    check_space(space);
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 1);
    do {
      if (n >= 3 && rest.front() > rest.back())
        continue; // canonical direction only; reverse has equal cost
      std::vector<int> tour{0};
      tour.insert(tour.end(), rest.begin(), rest.end());
      try_candidate(Json{{"tour", tour}});
    } while (std::next_permutation(rest.begin(), rest.end()));
    break;
  }
  case ProblemKind::WeightedMinMaxMatching:
  case ProblemKind::EdgeCover: {
    int m = static_cast<int>(g.edges.size());
    check_space(std::pow(2.0, m));
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
      std::vector<std::vector<int>> edges;
      for (int e = 0; e < m; ++e)
        if ((mask >> e) & 1ULL)
          edges.push_back(g.edges[static_cast<std::size_t>(e)]);
      try_candidate(Json{{"edges", edges}});
    }
    break;
  }
  case ProblemKind::MaxFlow: {
    double space = 1.0;
    for (const auto &arc : g.arcs)
      space *= arc.capacity + 1.0;
    check_space(space);
    std::vector<int> flow(g.arcs.size(), 0);
    while (true) {
      try_candidate(Json{{"flow", flow}});
      std::size_t i = 0;
      while (i < flow.size() &&
             ++flow[i] > static_cast<int>(g.arcs[i].capacity))
        flow[i++] = 0;
      if (i == flow.size())
        break;
    }
    break;
  }
  case ProblemKind::MinCut: {
    int s = inst.params.value("source", 0);
    int t = inst.params.value("sink", n - 1);
    check_space(std::pow(2.0, n - 2));
    std::vector<int> internal;
    for (int v = 0; v < n; ++v)
      if (v != s && v != t)
        internal.push_back(v);
    for (std::uint64_t mask = 0; mask < (1ULL << internal.size()); ++mask) {
      std::vector<int> side{s};
      for (std::size_t i = 0; i < internal.size(); ++i)
        if ((mask >> i) & 1ULL)
          side.push_back(internal[i]);
      std::sort(side.begin(), side.end());
      try_candidate(Json{{"source_side", side}});
    }
    break;
  }
  }

  auto out = collect.take();
  if (out.empty())
    throw DataError("brute force found no valid solution; generator broke its "
                    "planted-structure guarantee");
  return out;
}

Json instance_to_json(const ProblemInstance &instance) {
  Json j;
  j["kind"] = to_string(instance.kind);
  j["nodes"] = instance.graph.node_count;
  j["edges"] = instance.graph.edges;
  if (!instance.graph.edge_weights.empty())
    j["weights"] = instance.graph.edge_weights;
  if (!instance.graph.arcs.empty()) {
    Json arcs = Json::array();
    for (const auto &a : instance.graph.arcs)
      arcs.push_back(Json::array({a.source, a.target, a.capacity}));
    j["arcs"] = arcs;
  }
  j["params"] = instance.params;
  j["seed"] = instance.seed;
  return j;
}

ProblemInstance instance_from_json(const Json &j) {
  ProblemInstance inst;
  inst.kind = problem_kind_from_string(j.at("kind").get<std::string>());
  inst.graph.node_count = j.at("nodes").get<int>();
  const Json &edges = j.at("edges");
  bool weighted = j.contains("weights");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    std::optional<double> w;
    if (weighted)
      w = j.at("weights")[e].get<double>();
    inst.graph.add_edge(edges[e].get<std::vector<int>>(), w);
  }
  if (j.contains("arcs"))
    for (const auto &a : j.at("arcs"))
      inst.graph.add_arc(a[0].get<int>(), a[1].get<int>(), a[2].get<double>());
  inst.params = j.at("params");
  inst.seed = j.at("seed").get<std::uint64_t>();
  if (inst.params.contains("source"))
    inst.graph.source = inst.params["source"].get<int>();
  if (inst.params.contains("sink"))
    inst.graph.sink = inst.params["sink"].get<int>();
  inst.graph.check();
  return inst;
}

} // namespace quopt
