#include "quopt/hypergraph.hpp"

#include <algorithm>

namespace quopt {

void Hypergraph::add_edge(std::vector<int> nodes, std::optional<double> weight) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.empty())
    throw ParameterError("edge must contain at least one node");
  for (int v : nodes)
    if (v < 0 || v >= node_count)
      throw ParameterError("edge node index out of range");
  auto pos = std::lower_bound(edges.begin(), edges.end(), nodes);
  if (pos != edges.end() && *pos == nodes)
    throw ParameterError("duplicate edge");
  std::size_t at = static_cast<std::size_t>(pos - edges.begin());
  edges.insert(pos, std::move(nodes));
  if (weight) {
    if (edge_weights.size() != edges.size() - 1)
      throw ParameterError("mixing weighted and unweighted edges");
    edge_weights.insert(edge_weights.begin() + static_cast<std::ptrdiff_t>(at),
                        *weight);
  } else if (!edge_weights.empty()) {
    throw ParameterError("mixing weighted and unweighted edges");
  }
}

void Hypergraph::add_arc(int source_node, int target_node, double capacity) {
  if (source_node == target_node)
    throw ParameterError("self-loop arcs are not allowed");
  if (source_node < 0 || source_node >= node_count || target_node < 0 ||
      target_node >= node_count)
    throw ParameterError("arc node index out of range");
  if (capacity < 0.0)
    throw ParameterError("arc capacity must be non-negative");
  arcs.push_back({source_node, target_node, capacity});
}

bool Hypergraph::has_edge(const std::vector<int> &nodes) const {
  std::vector<int> key = nodes;
  std::sort(key.begin(), key.end());
  return std::binary_search(edges.begin(), edges.end(), key);
}

bool Hypergraph::has_pair_edge(int u, int v) const {
  return has_edge({u, v});
}

double Hypergraph::weight_of(std::size_t edge_index) const {
  return edge_weights.empty() ? 1.0 : edge_weights[edge_index];
}

std::vector<std::vector<int>> Hypergraph::incidence() const {
  std::vector<std::vector<int>> inc(static_cast<std::size_t>(node_count));
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (int v : edges[e])
      inc[static_cast<std::size_t>(v)].push_back(static_cast<int>(e));
  return inc;
}

std::vector<int> Hypergraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(node_count), 0);
  for (const auto &e : edges)
    for (int v : e)
      ++deg[static_cast<std::size_t>(v)];
  return deg;
}

bool Hypergraph::is_plain_graph() const {
  return std::all_of(edges.begin(), edges.end(),
                     [](const auto &e) { return e.size() == 2; });
}

void Hypergraph::check() const {
  if (node_count < 1)
    throw ParameterError("hypergraph needs at least one node");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto &edge = edges[e];
    if (edge.empty())
      throw ParameterError("empty edge");
    if (!std::is_sorted(edge.begin(), edge.end()) ||
        std::adjacent_find(edge.begin(), edge.end()) != edge.end())
      throw ParameterError("edge nodes must be sorted and unique");
    for (int v : edge)
      if (v < 0 || v >= node_count)
        throw ParameterError("edge node index out of range");
    if (e + 1 < edges.size() && edges[e] == edges[e + 1])
      throw ParameterError("duplicate edge");
  }
  if (!edge_weights.empty() && edge_weights.size() != edges.size())
    throw ParameterError("edge_weights size mismatch");
  for (const auto &a : arcs) {
    if (a.source == a.target)
      throw ParameterError("self-loop arcs are not allowed");
    if (a.source < 0 || a.source >= node_count || a.target < 0 ||
        a.target >= node_count)
      throw ParameterError("arc node index out of range");
    if (a.capacity < 0.0)
      throw ParameterError("arc capacity must be non-negative");
  }
  if (source && (*source < 0 || *source >= node_count))
    throw ParameterError("source index out of range");
  if (sink && (*sink < 0 || *sink >= node_count))
    throw ParameterError("sink index out of range");
}

std::vector<int> connected_component(const Hypergraph &g, int start) {
  std::vector<char> seen(static_cast<std::size_t>(g.node_count), 0);
  std::vector<int> stack{start}, out;
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (const auto &e : g.edges) {
      if (std::find(e.begin(), e.end(), v) == e.end())
        continue;
      for (int u : e)
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          stack.push_back(u);
        }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace quopt
