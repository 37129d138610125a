/**
 * @file dataset.hpp
 * @brief Dataset records, JSONL persistence, SFT prompt formatting, and
 *        train/test splitting.
 */

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "quopt/optimizer.hpp"
#include "quopt/problems.hpp"
#include "quopt/qasm3.hpp"

namespace quopt {

/// One solved problem, ready for JSONL persistence (schema "v1").
struct DatasetRecord {
  std::string record_id;
  Json problem; // canonical instance JSON
  std::string hamiltonian_text;
  double ground_energy = 0.0;
  std::vector<std::string> ground_states;
  double first_excited_energy = 0.0;
  std::vector<std::string> first_excited_states;
  Method method = Method::QAOA;
  std::optional<int> ansatz_id; // VQE only
  std::optional<int> layers;    // QAOA/VQE only
  int qubit_count = 0;
  int steps_taken = 0;
  std::vector<std::pair<std::string, double>> top_states;
  std::string circuit_symbolic_qasm;
  std::string circuit_numeric_qasm;
  /// (name, value) pairs in parameter order.
  std::vector<std::pair<std::string, double>> binding;
  std::optional<std::vector<std::string>> intermediate_circuits_qasm;
  std::uint64_t seed = 0;

  IsingPolynomial hamiltonian() const;
  ParameterBinding binding_map() const;

  bool operator==(const DatasetRecord &) const = default;
};

/**
 * Packages a converged solve into a record and enforces the record
 * invariants (valid QASM fields, top state in the ground set, numeric
 * circuit consistent with binding). Unconverged outcomes are rejected with
 * DataError.
 */
DatasetRecord make_record(const ProblemInstance &instance,
                          const IsingPolynomial &h,
                          const SpectrumSummary &spectrum,
                          const SolveOutcome &outcome,
                          const OptimizerConfig &cfg,
                          const std::string &record_id);

Json record_to_json(const DatasetRecord &record);
DatasetRecord record_from_json(const Json &j);

/// One canonical JSON object per line, stable key order, LF newlines.
void write_jsonl(const std::vector<DatasetRecord> &records,
                 const std::string &path);
std::vector<DatasetRecord> read_jsonl(const std::string &path);

/// A formatted SFT string: instruction plus the optimized circuit as the
/// answer, wrapped in the configured delimiter tokens.
struct TrainingSample {
  std::string text;
  int variant_id = 0;
};

/// Delimiter tokens and the five instruction phrasings. Placeholders
/// {kind}, {graph}, {params}, {hamiltonian}, {method}, {method_details} and
/// {qubits} are substituted from the record.
struct PromptTemplateConfig {
  std::string instruction_start;
  std::string instruction_end;
  std::string answer_start;
  std::string answer_end;
  std::vector<std::string> variants;

  static PromptTemplateConfig defaults();
  static PromptTemplateConfig from_json(const Json &j);
  Json to_json() const;
};

/// Renders variant `variant_id` (0..4); the answer section is byte-identical
/// to record.circuit_numeric_qasm.
TrainingSample format_prompt(const DatasetRecord &record, int variant_id,
                             const PromptTemplateConfig &config);

/// Deterministic variant pick for a record under a corpus seed.
int choose_variant(const std::string &record_id, std::uint64_t seed,
                   int variant_count = 5);

/// Seed-deterministic shuffle split; |train| = round(ratio * N).
template <typename T>
std::pair<std::vector<T>, std::vector<T>>
split(const std::vector<T> &records, double ratio, std::uint64_t seed) {
  if (ratio <= 0.0 || ratio >= 1.0)
    throw ParameterError("split ratio must lie strictly between 0 and 1");
  std::vector<T> shuffled = records;
  Rng rng(mix_seed(seed, 0x5b17));
  rng.shuffle(shuffled);
  auto train_size = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(shuffled.size())));
  std::vector<T> train(shuffled.begin(),
                       shuffled.begin() + static_cast<std::ptrdiff_t>(train_size));
  std::vector<T> test(shuffled.begin() + static_cast<std::ptrdiff_t>(train_size),
                      shuffled.end());
  return {std::move(train), std::move(test)};
}

/// Uniform sample of k records without replacement, deterministic per seed.
template <typename T>
std::vector<T> sample_test(const std::vector<T> &records, std::size_t k,
                           std::uint64_t seed) {
  if (k > records.size())
    throw ParameterError("sample size exceeds pool size");
  std::vector<T> pool = records;
  Rng rng(mix_seed(seed, 0x7e57));
  // Partial Fisher-Yates: the first k slots are the sample.
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.next_index(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

} // namespace quopt
