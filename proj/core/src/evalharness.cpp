#include "quopt/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace quopt {

namespace {

constexpr double kSmoothingEps = 1e-12;
constexpr double kNormTolerance = 1e-9;

Statevector simulate_qasm(const std::string &qasm) {
  auto doc = qasm3::parse(qasm);
  if (!doc.valid())
    throw ParameterError("candidate does not parse: " +
                         doc.diagnostic->to_string());
  if (!doc.program->circuit.is_numeric())
    throw ParameterError("candidate has unbound symbolic parameters");
  return simulate(doc.program->circuit);
}

double check_normalized(const Distribution &d, const char *which) {
  double sum = 0.0;
  for (const auto &[bits, p] : d) {
    if (p < 0.0)
      throw ParameterError(std::string(which) +
                           " distribution has a negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormTolerance)
    throw ParameterError(std::string(which) + " distribution is not normalized");
  return sum;
}

double mean_of(const std::vector<double> &xs) {
  double s = 0.0;
  for (double x : xs)
    s += x;
  return s / static_cast<double>(xs.size());
}

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double population_std(const std::vector<double> &xs, double mean) {
  double s = 0.0;
  for (double x : xs)
    s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

} // namespace

double delta_e(const std::string &candidate_qasm, const DatasetRecord &record) {
  auto doc = qasm3::parse(candidate_qasm);
  if (!doc.valid())
    throw ParameterError("candidate does not parse: " +
                         doc.diagnostic->to_string());
  if (!doc.program->circuit.is_numeric())
    throw ParameterError("candidate has unbound symbolic parameters");
  if (doc.program->circuit.qubit_count() != record.qubit_count)
    throw ParameterError("candidate qubit count " +
                         std::to_string(doc.program->circuit.qubit_count()) +
                         " does not match record qubit count " +
                         std::to_string(record.qubit_count));

  IsingPolynomial h = record.hamiltonian();
  double e_gen = expectation(simulate(doc.program->circuit), h);
  double e_sol = expectation(simulate_qasm(record.circuit_numeric_qasm), h);
  return std::abs(e_gen - e_sol);
}

double kl_divergence(const Distribution &p_ref, const Distribution &q) {
  check_normalized(p_ref, "reference");
  check_normalized(q, "candidate");

  std::set<std::string> support;
  for (const auto &[bits, _] : p_ref)
    support.insert(bits);
  for (const auto &[bits, _] : q)
    support.insert(bits);

  double norm = 1.0 + kSmoothingEps * static_cast<double>(support.size());
  double kl = 0.0;
  for (const auto &[bits, p] : p_ref) {
    if (p <= 0.0)
      continue;
    auto it = q.find(bits);
    double q_smoothed = ((it == q.end() ? 0.0 : it->second) + kSmoothingEps) / norm;
    kl += p * std::log(p / q_smoothed);
  }
  // Smoothing keeps the true value non-negative; only floating-point
  // round-off can dip below zero.
  if (kl < 0.0 && kl > -1e-9)
    kl = 0.0;
  return kl;
}

EvalReport evaluate_batch(const std::map<std::string, std::string> &candidates,
                          const std::vector<DatasetRecord> &records,
                          std::uint64_t seed) {
  std::map<std::string, const DatasetRecord *> by_id;
  for (const auto &r : records)
    by_id[r.record_id] = &r;

  EvalReport report;
  report.seed = seed;

  for (const auto &[record_id, qasm] : candidates) {
    auto found = by_id.find(record_id);
    if (found == by_id.end()) {
      report.skipped.emplace_back(record_id, "no matching record");
      continue;
    }
    const DatasetRecord &record = *found->second;

    CandidateRow row;
    row.record_id = record_id;
    auto v = qasm3::validate(qasm);
    row.syntax_valid = v.valid;
    if (!v.valid) {
      row.reason = v.diagnostic->to_string();
      report.rows.push_back(std::move(row));
      continue;
    }

    try {
      IsingPolynomial h = record.hamiltonian();
      auto doc = qasm3::parse(qasm);
      if (!doc.program->circuit.is_numeric())
        throw ParameterError("candidate has unbound symbolic parameters");
      if (doc.program->circuit.qubit_count() != record.qubit_count)
        throw ParameterError("qubit count mismatch");

      Statevector gen_state = simulate(doc.program->circuit);
      Statevector sol_state = simulate_qasm(record.circuit_numeric_qasm);
      row.e_gen = expectation(gen_state, h);
      row.e_sol = expectation(sol_state, h);
      row.delta_e = std::abs(*row.e_gen - *row.e_sol);

      Distribution p_sol = probabilities(sol_state);
      Distribution p_gen = probabilities(gen_state);
      row.kl_sol_gen = kl_divergence(p_sol, p_gen);

      // Random-parameter baseline on the record's symbolic circuit.
      auto sym = qasm3::parse(record.circuit_symbolic_qasm);
      if (!sym.valid())
        throw ParameterError("record symbolic circuit does not parse");
      ParameterBinding rand = random_binding(
          sym.program->circuit, mix_seed(seed, hash_string(record_id)));
      Distribution p_rand = probabilities(simulate(sym.program->circuit, rand));
      row.kl_sol_rand = kl_divergence(p_sol, p_rand);
    } catch (const Error &e) {
      row.reason = e.what();
      row.e_gen.reset();
      row.e_sol.reset();
      row.delta_e.reset();
      row.kl_sol_gen.reset();
      row.kl_sol_rand.reset();
    }
    report.rows.push_back(std::move(row));
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const CandidateRow &a, const CandidateRow &b) {
              return a.record_id < b.record_id;
            });

  auto &agg = report.aggregates;
  agg.n_total = static_cast<int>(report.rows.size());
  std::vector<double> deltas, kl_gen, kl_rand;
  for (const auto &row : report.rows) {
    if (row.syntax_valid)
      ++agg.n_valid;
    if (row.delta_e)
      deltas.push_back(*row.delta_e);
    if (row.kl_sol_gen)
      kl_gen.push_back(*row.kl_sol_gen);
    if (row.kl_sol_rand)
      kl_rand.push_back(*row.kl_sol_rand);
  }
  agg.accuracy_rate =
      agg.n_total == 0
          ? 0.0
          : static_cast<double>(agg.n_valid) / static_cast<double>(agg.n_total);
  if (!deltas.empty()) {
    agg.mean_delta_e = mean_of(deltas);
    agg.median_delta_e = median_of(deltas);
    agg.std_delta_e = population_std(deltas, *agg.mean_delta_e);
  }
  if (!kl_gen.empty())
    agg.mean_kl_gen = mean_of(kl_gen);
  if (!kl_rand.empty())
    agg.mean_kl_rand = mean_of(kl_rand);
  if (agg.mean_kl_gen && agg.mean_kl_rand && *agg.mean_kl_rand != 0.0)
    agg.improvement_over_random_pct =
        (*agg.mean_kl_rand - *agg.mean_kl_gen) / *agg.mean_kl_rand * 100.0;
  return report;
}

namespace {

Json opt_json(const std::optional<double> &v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string opt_csv(const std::optional<double> &v) {
  return v ? format_double(*v) : "";
}

} // namespace

Json EvalReport::to_json() const {
  Json rows_json = Json::array();
  for (const auto &row : rows) {
    Json r;
    r["record_id"] = row.record_id;
    r["syntax_valid"] = row.syntax_valid;
    if (row.reason)
      r["reason"] = *row.reason;
    r["e_gen"] = opt_json(row.e_gen);
    r["e_sol"] = opt_json(row.e_sol);
    r["delta_e"] = opt_json(row.delta_e);
    r["kl_sol_gen"] = opt_json(row.kl_sol_gen);
    r["kl_sol_rand"] = opt_json(row.kl_sol_rand);
    rows_json.push_back(std::move(r));
  }
  Json skipped_json = Json::array();
  for (const auto &[id, reason] : skipped)
    skipped_json.push_back(Json{{"candidate", id}, {"reason", reason}});

  Json agg;
  agg["n_total"] = aggregates.n_total;
  agg["n_valid"] = aggregates.n_valid;
  agg["accuracy_rate"] = aggregates.accuracy_rate;
  agg["mean_delta_e"] = opt_json(aggregates.mean_delta_e);
  agg["median_delta_e"] = opt_json(aggregates.median_delta_e);
  agg["std_delta_e"] = opt_json(aggregates.std_delta_e);
  agg["mean_kl_gen"] = opt_json(aggregates.mean_kl_gen);
  agg["mean_kl_rand"] = opt_json(aggregates.mean_kl_rand);
  agg["improvement_over_random_pct"] =
      opt_json(aggregates.improvement_over_random_pct);

  return Json{{"aggregates", agg},
              {"kl_log_base", kl_log_base},
              {"rows", rows_json},
              {"seed", seed},
              {"skipped", skipped_json}};
}

std::string EvalReport::rows_csv() const {
  std::ostringstream out;
  out << "record_id,syntax_valid,e_gen,e_sol,delta_e,kl_sol_gen,kl_sol_rand,"
         "reason\n";
  for (const auto &row : rows) {
    std::string reason = row.reason.value_or("");
    std::replace(reason.begin(), reason.end(), ',', ';');
    std::replace(reason.begin(), reason.end(), '\n', ' ');
    out << row.record_id << ',' << (row.syntax_valid ? 1 : 0) << ','
        << opt_csv(row.e_gen) << ',' << opt_csv(row.e_sol) << ','
        << opt_csv(row.delta_e) << ',' << opt_csv(row.kl_sol_gen) << ','
        << opt_csv(row.kl_sol_rand) << ',' << reason << '\n';
  }
  return out.str();
}

} // namespace quopt
