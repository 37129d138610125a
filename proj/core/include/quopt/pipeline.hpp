/**
 * @file pipeline.hpp
 * @brief End-to-end orchestration: run configuration, instance generation,
 *        parallel solving, and corpus statistics.
 */

#pragma once

#include <string>
#include <vector>

#include "quopt/dataset.hpp"
#include "quopt/evalharness.hpp"

namespace quopt {

/// One problem family to generate: `count` instances of `kind`, each sized
/// by one of the entries in `sizes` (rotated by instance index; empty means
/// kind defaults).
struct ProblemSpec {
  ProblemKind kind = ProblemKind::VertexCover;
  int count = 1;
  std::vector<Json> sizes;
};

/// One solve family: a method plus the layer / ansatz menu rotated across
/// instances.
struct MethodSpec {
  Method method = Method::QAOA;
  std::vector<int> layers = {1};      // QAOA / VQE
  std::vector<int> ansatz_ids = {1};  // VQE
  int adaptive_max_gates = 30;        // AdaptiveVQE
  /// Skip instances needing more qubits than this (0 = no extra limit).
  int max_qubits = 0;
};

struct RunConfig {
  std::vector<ProblemSpec> problems;
  std::vector<MethodSpec> methods;
  int max_steps = 500;
  double learning_rate = 0.05;
  int top_states = 5;
  /// Extra deterministic re-initializations tried when a QAOA/VQE job does
  /// not converge (adaptive VQE has no random initialization to retry).
  int restarts = 2;
  std::uint64_t seed = 1;
  int workers = 1;
  int qubit_cap = 14;

  static RunConfig from_json(const Json &j);
  Json to_json() const;

  /// Default desk-scale configuration covering all 12 kinds and 3 methods.
  static RunConfig desk_default();
};

/// Deterministic instance list; instance seeds run seed, seed+1, ...
std::vector<ProblemInstance> generate_instances(const RunConfig &config);

struct SolveStats {
  int jobs = 0;
  int converged = 0;
  int stalled = 0;
};

/// Solves every (instance x method) job on a worker pool and keeps the
/// converged ones. Results are identical for any worker count.
std::vector<DatasetRecord> solve_all(const RunConfig &config,
                                     const std::vector<ProblemInstance> &instances,
                                     SolveStats *stats = nullptr);

/// Deterministic record id: kind, instance seed, method and variant.
std::string make_record_id(const ProblemInstance &instance,
                           const OptimizerConfig &cfg);

void write_instances_jsonl(const std::vector<ProblemInstance> &instances,
                           const std::string &path);
std::vector<ProblemInstance> read_instances_jsonl(const std::string &path);

/// Corpus summary tables, each rendered as CSV.
struct CorpusStats {
  /// record_id,kind,method,qubits,gates,depth,ground_probability
  std::string records_csv;
  /// kind,method,count
  std::string problem_method_counts_csv;
  /// qubits,records,mean_ground_probability,uniform_baseline
  std::string probability_by_qubits_csv;
  /// method,records,gates_min,gates_mean,gates_max,depth_min,depth_mean,depth_max
  std::string gate_depth_by_method_csv;
};

/// Recomputes per-record gate counts, depths, and the probability mass on
/// exact ground states by re-simulating each numeric circuit.
CorpusStats corpus_stats(const std::vector<DatasetRecord> &records);

} // namespace quopt
