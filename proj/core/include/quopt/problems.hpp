/**
 * @file problems.hpp
 * @brief The twelve graph optimization problem kinds: instance generation
 *        with planted solutions, validity checking, and exhaustive
 *        classical oracles.
 *
 * Generators are reverse-engineered: they plant a known solution first and
 * grow the instance around it, so every instance is guaranteed solvable.
 * Solutions are represented as canonical JSON values so that solution sets
 * can be compared exactly across the classical oracle and the decoded
 * Hamiltonian minimizers:
 *
 *   connected_components      {"vertices":[...]}
 *   community_detection       {"parts":[[...],[...]]}   part with node 0 first
 *   k_clique                  {"vertices":[...]}
 *   graph_isomorphism         {"mapping":[f(0),f(1),...]}
 *   graph_coloring            {"colors":[c_0,c_1,...]}
 *   traveling_salesman        {"tour":[0,...]}          canonical direction
 *   weighted_minmax_matching  {"edges":[[u,v],...]}
 *   vertex_cover              {"vertices":[...]}
 *   edge_cover                {"edges":[[u,v],...]}
 *   max_flow                  {"flow":[f_arc0,...]}     aligned with arcs
 *   min_cut                   {"source_side":[...]}
 *   hyper_maxcut              {"parts":[[...],[...]]}   part with node 0 first
 *
 * Decision kinds (k_clique, graph_isomorphism, graph_coloring) use
 * objective 0 for every valid solution; the remaining kinds minimize or
 * maximize the documented size/weight/cut objective.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "quopt/hypergraph.hpp"

namespace quopt {

using Json = nlohmann::json;

enum class ProblemKind {
  ConnectedComponents,
  CommunityDetection,
  KClique,
  GraphIsomorphism,
  GraphColoring,
  TravelingSalesman,
  WeightedMinMaxMatching,
  VertexCover,
  EdgeCover,
  MaxFlow,
  MinCut,
  HyperMaxCut,
};

inline constexpr int kProblemKindCount = 12;

const std::vector<ProblemKind> &all_problem_kinds();
std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string &name);

struct ProblemInstance {
  ProblemKind kind = ProblemKind::VertexCover;
  Hypergraph graph;
  /// Kind-specific parameters (k, colors, fixed_node, edges2, ...).
  Json params = Json::object();
  std::uint64_t seed = 0;

  /// Second graph of a graph_isomorphism instance (stored in params).
  Hypergraph second_graph() const;

  bool operator==(const ProblemInstance &other) const;
};

/// One decoded problem-level solution plus its objective value.
struct ClassicalSolution {
  Json assignment;
  double objective = 0.0;

  /// Canonical byte form used for ordering and set comparison.
  std::string key() const { return assignment.dump(); }

  bool operator==(const ClassicalSolution &other) const {
    return assignment == other.assignment && objective == other.objective;
  }
};

struct ValidationResult {
  bool valid = false;
  double objective = 0.0;
};

struct GeneratedInstance {
  ProblemInstance instance;
  ClassicalSolution planted;
};

/// Default size parameters per kind (qubit budgets stay within the cap).
Json default_size_params(ProblemKind kind);

/// Generates a solvable instance. Deterministic in (kind, size_params,
/// seed); missing size parameters fall back to default_size_params.
/// Throws CapacityError when the implied qubit count exceeds `qubit_cap`
/// and ParameterError for infeasible size parameters.
GeneratedInstance generate_instance_with_planted(ProblemKind kind,
                                                 const Json &size_params,
                                                 std::uint64_t seed,
                                                 int qubit_cap = 14);

ProblemInstance generate_instance(ProblemKind kind, const Json &size_params,
                                  std::uint64_t seed, int qubit_cap = 14);

/// Checks `candidate` against the textbook definition of instance.kind and
/// computes its objective. Shape mismatches throw ParameterError.
ValidationResult validate_solution(const ProblemInstance &instance,
                                   const ClassicalSolution &candidate);

/// All optima of the classical objective by exhaustive enumeration,
/// deterministically ordered by canonical assignment. Throws CapacityError
/// when the decision space exceeds 2^20 configurations.
std::vector<ClassicalSolution> brute_force_optimum(const ProblemInstance &instance);

/// Canonical JSON form: {kind, nodes, edges, weights?, arcs?, params, seed}
/// with stable key order.
Json instance_to_json(const ProblemInstance &instance);
ProblemInstance instance_from_json(const Json &j);

} // namespace quopt
