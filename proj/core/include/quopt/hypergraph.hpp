/**
 * @file hypergraph.hpp
 * @brief Node/edge container shared by all problem kinds.
 *
 * A hypergraph is a set of nodes plus a set of node-index sets; a plain
 * graph is the special case where every edge has exactly two nodes. Flow
 * problems additionally carry directed capacitated arcs and source/sink
 * markers.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quopt/common.hpp"

namespace quopt {

struct Arc {
  int source = 0;
  int target = 0;
  double capacity = 0.0;

  bool operator==(const Arc &) const = default;
};

class Hypergraph {
public:
  int node_count = 0;
  /// Each edge is a sorted, duplicate-free node-index set of size >= 1;
  /// the edge list itself is kept sorted and duplicate-free.
  std::vector<std::vector<int>> edges;
  /// Optional weights aligned with `edges` (empty means unweighted).
  std::vector<double> edge_weights;
  /// Directed arcs for flow problems. No self-loops.
  std::vector<Arc> arcs;
  std::optional<int> source;
  std::optional<int> sink;

  Hypergraph() = default;
  explicit Hypergraph(int nodes) : node_count(nodes) {}

  /// Adds an edge given as any node list; sorts, dedupes, and keeps the
  /// edge list canonical. Duplicate edges are rejected.
  void add_edge(std::vector<int> nodes, std::optional<double> weight = {});

  void add_arc(int source_node, int target_node, double capacity);

  bool has_edge(const std::vector<int> &nodes) const;

  /// Pairwise adjacency test for 2-uniform graphs.
  bool has_pair_edge(int u, int v) const;

  double weight_of(std::size_t edge_index) const;

  /// Edge indices incident to each node.
  std::vector<std::vector<int>> incidence() const;

  /// Node degrees counting one per incident edge.
  std::vector<int> degrees() const;

  bool is_plain_graph() const;

  /// Checks all structural invariants, throwing ParameterError on failure.
  void check() const;

  bool operator==(const Hypergraph &) const = default;
};

/// Connected component of `start` using edges as cliques of connectivity
/// (two nodes are adjacent when they share an edge). Sorted node list.
std::vector<int> connected_component(const Hypergraph &g, int start);

} // namespace quopt
