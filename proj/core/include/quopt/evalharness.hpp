/**
 * @file evalharness.hpp
 * @brief Candidate-circuit evaluation: syntax validity, expectation-value
 *        difference against the solution circuit, and relative entropy
 *        against the solution distribution with a random-parameter baseline.
 */

#pragma once

#include <map>
#include <optional>
#include <string>

#include "quopt/dataset.hpp"
#include "quopt/simulator.hpp"

namespace quopt {

struct CandidateRow {
  std::string record_id;
  bool syntax_valid = false;
  /// Why ΔE / KL are undefined for this row, when they are.
  std::optional<std::string> reason;
  std::optional<double> e_gen;
  std::optional<double> e_sol;
  std::optional<double> delta_e;
  std::optional<double> kl_sol_gen;
  std::optional<double> kl_sol_rand;
};

struct EvalAggregates {
  int n_total = 0;
  int n_valid = 0;
  double accuracy_rate = 0.0;
  std::optional<double> mean_delta_e;
  std::optional<double> median_delta_e;
  std::optional<double> std_delta_e; // population standard deviation
  std::optional<double> mean_kl_gen;
  std::optional<double> mean_kl_rand;
  std::optional<double> improvement_over_random_pct;
};

struct EvalReport {
  std::vector<CandidateRow> rows; // sorted by record_id
  /// Candidates without a matching record: (candidate id, reason).
  std::vector<std::pair<std::string, std::string>> skipped;
  EvalAggregates aggregates;
  std::uint64_t seed = 0;
  std::string kl_log_base = "e";

  Json to_json() const;
  /// Per-candidate rows as CSV (header + one line per row).
  std::string rows_csv() const;
};

/**
 * |E_gen - E_sol| for a syntactically valid, fully numeric candidate whose
 * qubit count matches the record. Invalid candidates, unbound parameters,
 * or qubit mismatches throw ParameterError (the metric is undefined, not
 * zero).
 */
double delta_e(const std::string &candidate_qasm, const DatasetRecord &record);

/**
 * D_KL(P || Q') with natural log, where Q' = (Q + eps) / norm smoothed with
 * eps = 1e-12 over the union support. Both inputs must be normalized within
 * 1e-9 (ParameterError otherwise). Result is >= 0.
 */
double kl_divergence(const Distribution &p_ref, const Distribution &q);

/**
 * Runs validate -> delta_e -> kl_divergence per candidate (keyed by
 * record_id) and aggregates. The random baseline distribution comes from
 * random_binding on the record's symbolic circuit, seeded per record from
 * `seed`.
 */
EvalReport evaluate_batch(const std::map<std::string, std::string> &candidates,
                          const std::vector<DatasetRecord> &records,
                          std::uint64_t seed);

} // namespace quopt
