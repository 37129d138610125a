#include "quopt/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "quopt/formulations.hpp"
#include "quopt/jobs.hpp"

namespace quopt {

RunConfig RunConfig::from_json(const Json &j) {
  RunConfig cfg;
  for (const auto &p : j.value("problems", Json::array())) {
    ProblemSpec spec;
    spec.kind = problem_kind_from_string(p.at("kind").get<std::string>());
    spec.count = p.value("count", 1);
    if (spec.count < 1)
      throw ParameterError("problem count must be positive");
    for (const auto &s : p.value("sizes", Json::array()))
      spec.sizes.push_back(s);
    cfg.problems.push_back(std::move(spec));
  }
  for (const auto &m : j.value("methods", Json::array())) {
    MethodSpec spec;
    spec.method = method_from_string(m.at("method").get<std::string>());
    if (m.contains("layers"))
      spec.layers = m.at("layers").get<std::vector<int>>();
    if (m.contains("ansatz_ids"))
      spec.ansatz_ids = m.at("ansatz_ids").get<std::vector<int>>();
    spec.adaptive_max_gates = m.value("adaptive_max_gates", 30);
    spec.max_qubits = m.value("max_qubits", 0);
    if (spec.layers.empty() || spec.ansatz_ids.empty())
      throw ParameterError("method menu lists cannot be empty");
    cfg.methods.push_back(std::move(spec));
  }
  cfg.max_steps = j.value("max_steps", 500);
  cfg.learning_rate = j.value("learning_rate", 0.05);
  cfg.top_states = j.value("top_states", 5);
  cfg.restarts = j.value("restarts", 2);
  cfg.seed = j.value("seed", 1ULL);
  cfg.workers = j.value("workers", 1);
  cfg.qubit_cap = j.value("qubit_cap", 14);
  if (cfg.workers < 1)
    throw ParameterError("workers must be >= 1");
  if (cfg.restarts < 0)
    throw ParameterError("restarts must be >= 0");
  return cfg;
}

Json RunConfig::to_json() const {
  Json problems_json = Json::array();
  for (const auto &p : problems) {
    Json pj;
    pj["kind"] = to_string(p.kind);
    pj["count"] = p.count;
    pj["sizes"] = p.sizes;
    problems_json.push_back(std::move(pj));
  }
  Json methods_json = Json::array();
  for (const auto &m : methods) {
    Json mj;
    mj["method"] = to_string(m.method);
    mj["layers"] = m.layers;
    mj["ansatz_ids"] = m.ansatz_ids;
    mj["adaptive_max_gates"] = m.adaptive_max_gates;
    mj["max_qubits"] = m.max_qubits;
    methods_json.push_back(std::move(mj));
  }
  return Json{{"problems", problems_json},
              {"methods", methods_json},
              {"max_steps", max_steps},
              {"learning_rate", learning_rate},
              {"top_states", top_states},
              {"restarts", restarts},
              {"seed", seed},
              {"workers", workers},
              {"qubit_cap", qubit_cap}};
}

RunConfig RunConfig::desk_default() {
  RunConfig cfg;
  cfg.max_steps = 400;
  cfg.learning_rate = 0.05;
  cfg.seed = 1;
  cfg.workers = 4;

  for (ProblemKind kind : all_problem_kinds())
    cfg.problems.push_back({kind, 20, {}});

  MethodSpec qaoa;
  qaoa.method = Method::QAOA;
  qaoa.layers = {1, 2};
  cfg.methods.push_back(qaoa);

  MethodSpec vqe;
  vqe.method = Method::VQE;
  vqe.layers = {1, 2};
  vqe.ansatz_ids = {1, 3, 9, 11};
  cfg.methods.push_back(vqe);

  MethodSpec adaptive;
  adaptive.method = Method::AdaptiveVQE;
  adaptive.adaptive_max_gates = 25;
  adaptive.max_qubits = 8;
  cfg.methods.push_back(adaptive);

  return cfg;
}

std::vector<ProblemInstance> generate_instances(const RunConfig &config) {
  std::vector<ProblemInstance> out;
  std::uint64_t next_seed = config.seed;
  for (const auto &spec : config.problems) {
    for (int i = 0; i < spec.count; ++i) {
      Json size = spec.sizes.empty()
                      ? Json::object()
                      : spec.sizes[static_cast<std::size_t>(i) % spec.sizes.size()];
      out.push_back(
          generate_instance(spec.kind, size, next_seed++, config.qubit_cap));
    }
  }
  return out;
}

std::string make_record_id(const ProblemInstance &instance,
                           const OptimizerConfig &cfg) {
  std::ostringstream id;
  id << to_string(instance.kind) << "-s" << std::setw(6) << std::setfill('0')
     << instance.seed << "-" << to_string(cfg.method);
  if (cfg.method == Method::VQE)
    id << "-a" << cfg.ansatz_id;
  if (cfg.method != Method::AdaptiveVQE)
    id << "-l" << cfg.layers;
  return id.str();
}

namespace {

struct SolveJob {
  const ProblemInstance *instance = nullptr;
  OptimizerConfig cfg;
  int restarts = 0;
};

struct JobResult {
  bool converged = false;
  bool stalled = false;
  std::optional<DatasetRecord> record;
};

JobResult run_solve_job(const SolveJob &job) {
  const ProblemInstance &instance = *job.instance;
  BinaryPolynomial p = build_polynomial(instance);
  IsingPolynomial h = binary_to_ising(p);
  SpectrumSummary spectrum = h.exact_solve();

  // Adaptive VQE draws no random initialization, so retrying is pointless.
  int attempts =
      job.cfg.method == Method::AdaptiveVQE ? 1 : 1 + job.restarts;

  SolveOutcome outcome;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    OptimizerConfig cfg = job.cfg;
    cfg.seed = mix_seed(job.cfg.seed, static_cast<std::uint64_t>(attempt));
    switch (cfg.method) {
    case Method::QAOA:
      outcome = optimize_parameters(build_qaoa(h, cfg.layers), h, spectrum, cfg);
      break;
    case Method::VQE:
      outcome = optimize_parameters(
          build_vqe_ansatz(cfg.ansatz_id, h.qubit_count(), cfg.layers), h,
          spectrum, cfg);
      break;
    case Method::AdaptiveVQE:
      outcome = adaptive_vqe(h, spectrum, cfg);
      break;
    }
    if (outcome.converged)
      break;
  }

  JobResult result;
  result.converged = outcome.converged;
  result.stalled = outcome.stalled;
  if (outcome.converged)
    result.record = make_record(instance, h, spectrum, outcome, job.cfg,
                                make_record_id(instance, job.cfg));
  return result;
}

} // namespace

std::vector<DatasetRecord> solve_all(const RunConfig &config,
                                     const std::vector<ProblemInstance> &instances,
                                     SolveStats *stats) {
  std::vector<SolveJob> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const ProblemInstance &instance = instances[i];
    int qubits = qubit_count(instance);
    for (const auto &m : config.methods) {
      if (m.max_qubits > 0 && qubits > m.max_qubits)
        continue;
      OptimizerConfig cfg;
      cfg.method = m.method;
      cfg.max_steps = config.max_steps;
      cfg.learning_rate = config.learning_rate;
      cfg.top_states = config.top_states;
      cfg.layers = m.layers[i % m.layers.size()];
      cfg.ansatz_id = m.ansatz_ids[i % m.ansatz_ids.size()];
      cfg.adaptive_max_gates = m.adaptive_max_gates;
      // Each job draws its initial parameters from its own stream.
      cfg.seed = mix_seed(config.seed, hash_string(make_record_id(instance, cfg)));
      jobs.push_back({&instance, cfg, config.restarts});
    }
  }

  std::vector<JobResult> results = run_indexed_jobs<JobResult>(
      jobs.size(), config.workers,
      [&jobs](std::size_t i) { return run_solve_job(jobs[i]); });

  std::vector<DatasetRecord> records;
  SolveStats tally;
  tally.jobs = static_cast<int>(jobs.size());
  for (auto &res : results) {
    if (res.converged)
      ++tally.converged;
    if (res.stalled)
      ++tally.stalled;
    if (res.record)
      records.push_back(std::move(*res.record));
  }
  if (stats)
    *stats = tally;
  return records;
}

void write_instances_jsonl(const std::vector<ProblemInstance> &instances,
                           const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw DataError("cannot open for writing: " + path);
  for (const auto &inst : instances)
    out << instance_to_json(inst).dump() << "\n";
}

std::vector<ProblemInstance> read_instances_jsonl(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DataError("cannot open for reading: " + path);
  std::vector<ProblemInstance> instances;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded())
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": malformed JSON line");
    instances.push_back(instance_from_json(j));
  }
  return instances;
}

CorpusStats corpus_stats(const std::vector<DatasetRecord> &records) {
  CorpusStats stats;
  std::ostringstream rows;
  rows << "record_id,kind,method,qubits,gates,depth,ground_probability\n";

  std::map<std::pair<std::string, std::string>, int> counts;
  std::map<int, std::pair<int, double>> by_qubits; // qubits -> (n, sum p)
  struct MethodAgg {
    int n = 0;
    int gates_min = 0, gates_max = 0, depth_min = 0, depth_max = 0;
    double gates_sum = 0.0, depth_sum = 0.0;
  };
  std::map<std::string, MethodAgg> by_method;

  for (const auto &r : records) {
    auto doc = qasm3::parse(r.circuit_numeric_qasm);
    if (!doc.valid())
      throw DataError(r.record_id + ": stored circuit does not parse");
    const Circuit &c = doc.program->circuit;
    int gates = static_cast<int>(c.gates().size());
    int depth = c.depth();

    Statevector sv = simulate(c);
    double ground_p = 0.0;
    for (const auto &bits : r.ground_states)
      ground_p += std::norm(sv.amplitudes[parse_bits(bits)]);

    std::string kind = r.problem.value("kind", "unknown");
    std::string method = to_string(r.method);
    rows << r.record_id << ',' << kind << ',' << method << ','
         << r.qubit_count << ',' << gates << ',' << depth << ','
         << format_double(ground_p) << "\n";

    ++counts[{kind, method}];
    auto &[qn, qsum] = by_qubits[r.qubit_count];
    ++qn;
    qsum += ground_p;
    auto &agg = by_method[method];
    if (agg.n == 0) {
      agg.gates_min = agg.gates_max = gates;
      agg.depth_min = agg.depth_max = depth;
    }
    agg.gates_min = std::min(agg.gates_min, gates);
    agg.gates_max = std::max(agg.gates_max, gates);
    agg.depth_min = std::min(agg.depth_min, depth);
    agg.depth_max = std::max(agg.depth_max, depth);
    agg.gates_sum += gates;
    agg.depth_sum += depth;
    ++agg.n;
  }
  stats.records_csv = rows.str();

  std::ostringstream pm;
  pm << "kind,method,count\n";
  for (const auto &[key, count] : counts)
    pm << key.first << ',' << key.second << ',' << count << "\n";
  stats.problem_method_counts_csv = pm.str();

  std::ostringstream pq;
  pq << "qubits,records,mean_ground_probability,uniform_baseline\n";
  for (const auto &[qubits, agg] : by_qubits)
    pq << qubits << ',' << agg.first << ','
       << format_double(agg.second / agg.first) << ','
       << format_double(1.0 / std::pow(2.0, qubits)) << "\n";
  stats.probability_by_qubits_csv = pq.str();

  std::ostringstream gd;
  gd << "method,records,gates_min,gates_mean,gates_max,depth_min,depth_mean,"
        "depth_max\n";
  for (const auto &[method, agg] : by_method)
    gd << method << ',' << agg.n << ',' << agg.gates_min << ','
       << format_double(agg.gates_sum / agg.n) << ',' << agg.gates_max << ','
       << agg.depth_min << ',' << format_double(agg.depth_sum / agg.n) << ','
       << agg.depth_max << "\n";
  stats.gate_depth_by_method_csv = gd.str();

  return stats;
}

} // namespace quopt
