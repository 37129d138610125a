#include "quopt/dataset.hpp"

#include <algorithm>
#include <fstream>

namespace quopt {

IsingPolynomial DatasetRecord::hamiltonian() const {
  return parse_hamiltonian(hamiltonian_text, qubit_count);
}

ParameterBinding DatasetRecord::binding_map() const {
  ParameterBinding b;
  for (const auto &[name, value] : binding)
    b.values[name] = value;
  return b;
}

DatasetRecord make_record(const ProblemInstance &instance,
                          const IsingPolynomial &h,
                          const SpectrumSummary &spectrum,
                          const SolveOutcome &outcome,
                          const OptimizerConfig &cfg,
                          const std::string &record_id) {
  if (!outcome.converged)
    throw DataError("unconverged outcomes are not recorded");
  if (outcome.top_states.empty())
    throw DataError("outcome carries no top states");
  if (std::find(spectrum.ground_states.begin(), spectrum.ground_states.end(),
                outcome.top_states.front().first) ==
      spectrum.ground_states.end())
    throw DataError("most probable state is not a ground state");

  DatasetRecord r;
  r.record_id = record_id;
  r.problem = instance_to_json(instance);
  r.hamiltonian_text = render_hamiltonian(h);
  r.ground_energy = spectrum.ground_energy;
  r.ground_states = spectrum.ground_states;
  r.first_excited_energy = spectrum.first_excited_energy;
  r.first_excited_states = spectrum.first_excited_states;
  r.method = cfg.method;
  if (cfg.method == Method::VQE)
    r.ansatz_id = cfg.ansatz_id;
  if (cfg.method != Method::AdaptiveVQE)
    r.layers = cfg.layers;
  r.qubit_count = outcome.circuit.qubit_count();
  r.steps_taken = outcome.steps_taken;
  r.top_states = outcome.top_states;
  r.circuit_symbolic_qasm = qasm3::emit(outcome.circuit);
  r.circuit_numeric_qasm = qasm3::emit(outcome.circuit, outcome.binding);
  for (const auto &name : outcome.circuit.parameter_order())
    r.binding.emplace_back(name, outcome.binding.at(name));
  if (cfg.method == Method::AdaptiveVQE) {
    std::vector<std::string> intermediates;
    for (const auto &[circuit, binding] : outcome.intermediate_circuits)
      intermediates.push_back(qasm3::emit(circuit, binding));
    r.intermediate_circuits_qasm = std::move(intermediates);
  }
  r.seed = instance.seed;

  for (const std::string *qasm :
       {&r.circuit_symbolic_qasm, &r.circuit_numeric_qasm}) {
    auto v = qasm3::validate(*qasm);
    if (!v.valid)
      throw DataError("record QASM does not validate: " +
                      v.diagnostic->to_string());
  }
  return r;
}

namespace {

Json pairs_to_json(const std::vector<std::pair<std::string, double>> &pairs) {
  Json out = Json::array();
  for (const auto &[k, v] : pairs)
    out.push_back(Json::array({k, v}));
  return out;
}

std::vector<std::pair<std::string, double>> pairs_from_json(const Json &j) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto &e : j)
    out.emplace_back(e[0].get<std::string>(), e[1].get<double>());
  return out;
}

} // namespace

Json record_to_json(const DatasetRecord &r) {
  Json j;
  j["record_id"] = r.record_id;
  j["problem"] = r.problem;
  j["hamiltonian_text"] = r.hamiltonian_text;
  j["ground_energy"] = r.ground_energy;
  j["ground_states"] = r.ground_states;
  j["first_excited_energy"] = r.first_excited_energy;
  j["first_excited_states"] = r.first_excited_states;
  j["method"] = to_string(r.method);
  if (r.ansatz_id)
    j["ansatz_id"] = *r.ansatz_id;
  if (r.layers)
    j["layers"] = *r.layers;
  j["qubit_count"] = r.qubit_count;
  j["steps_taken"] = r.steps_taken;
  j["top_states"] = pairs_to_json(r.top_states);
  j["circuit_symbolic_qasm"] = r.circuit_symbolic_qasm;
  j["circuit_numeric_qasm"] = r.circuit_numeric_qasm;
  j["binding"] = pairs_to_json(r.binding);
  if (r.intermediate_circuits_qasm)
    j["intermediate_circuits_qasm"] = *r.intermediate_circuits_qasm;
  j["seed"] = r.seed;
  j["schema"] = "v1";
  return j;
}

DatasetRecord record_from_json(const Json &j) {
  if (j.value("schema", "") != "v1")
    throw DataError("unsupported record schema");
  DatasetRecord r;
  r.record_id = j.at("record_id").get<std::string>();
  r.problem = j.at("problem");
  r.hamiltonian_text = j.at("hamiltonian_text").get<std::string>();
  r.ground_energy = j.at("ground_energy").get<double>();
  r.ground_states = j.at("ground_states").get<std::vector<std::string>>();
  r.first_excited_energy = j.at("first_excited_energy").get<double>();
  r.first_excited_states =
      j.at("first_excited_states").get<std::vector<std::string>>();
  r.method = method_from_string(j.at("method").get<std::string>());
  if (j.contains("ansatz_id"))
    r.ansatz_id = j.at("ansatz_id").get<int>();
  if (j.contains("layers"))
    r.layers = j.at("layers").get<int>();
  r.qubit_count = j.at("qubit_count").get<int>();
  r.steps_taken = j.at("steps_taken").get<int>();
  r.top_states = pairs_from_json(j.at("top_states"));
  r.circuit_symbolic_qasm = j.at("circuit_symbolic_qasm").get<std::string>();
  r.circuit_numeric_qasm = j.at("circuit_numeric_qasm").get<std::string>();
  r.binding = pairs_from_json(j.at("binding"));
  if (j.contains("intermediate_circuits_qasm"))
    r.intermediate_circuits_qasm =
        j.at("intermediate_circuits_qasm").get<std::vector<std::string>>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

void write_jsonl(const std::vector<DatasetRecord> &records,
                 const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw DataError("cannot open for writing: " + path);
  for (const auto &r : records)
    out << record_to_json(r).dump() << "\n";
  if (!out)
    throw DataError("write failed: " + path);
}

std::vector<DatasetRecord> read_jsonl(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DataError("cannot open for reading: " + path);
  std::vector<DatasetRecord> records;
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
    try {
      records.push_back(record_from_json(j));
    } catch (const Json::exception &e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

PromptTemplateConfig PromptTemplateConfig::defaults() {
  PromptTemplateConfig cfg;
  cfg.instruction_start = "<|instruction|>\n";
  cfg.instruction_end = "\n<|/instruction|>\n";
  cfg.answer_start = "<|answer|>\n";
  cfg.answer_end = "\n<|/answer|>";
  cfg.variants = {
      "Construct an optimized quantum circuit in OpenQASM 3.0 that solves "
      "the following {kind} problem using {method_details}. Graph data: "
      "{graph}. Problem parameters: {params}. The cost Hamiltonian is "
      "{hamiltonian}. The circuit acts on {qubits} qubits. Return only the "
      "circuit with tuned parameters.",

      "You are given a {kind} instance on the graph {graph} with parameters "
      "{params}. Target Hamiltonian: {hamiltonian}. Produce a quantum "
      "circuit on {qubits} qubits using {method_details}, written in "
      "OpenQASM 3.0, whose parameters prepare a low-energy state.",

      "Problem kind: {kind}\nGraph: {graph}\nParameters: {params}\n"
      "Hamiltonian: {hamiltonian}\nMethod: {method_details}\nQubits: "
      "{qubits}\nWrite the optimized OpenQASM 3.0 circuit.",

      "Solve the {kind} optimization task below with {method_details} and "
      "output OpenQASM 3.0. Cost Hamiltonian: {hamiltonian}. The circuit "
      "uses {qubits} qubits. Graph: {graph}. Additional parameters: "
      "{params}.",

      "Using {method_details}, generate a parameterized quantum circuit "
      "with good initial parameters for this {kind} task on {qubits} "
      "qubits. Graph: {graph}. Parameters: {params}. Cost function: "
      "{hamiltonian}. Answer with OpenQASM 3.0 code only."};
  return cfg;
}

PromptTemplateConfig PromptTemplateConfig::from_json(const Json &j) {
  PromptTemplateConfig cfg = defaults();
  if (j.contains("tokens")) {
    const Json &t = j.at("tokens");
    cfg.instruction_start = t.value("instruction_start", cfg.instruction_start);
    cfg.instruction_end = t.value("instruction_end", cfg.instruction_end);
    cfg.answer_start = t.value("answer_start", cfg.answer_start);
    cfg.answer_end = t.value("answer_end", cfg.answer_end);
  }
  if (j.contains("variants")) {
    cfg.variants = j.at("variants").get<std::vector<std::string>>();
    if (cfg.variants.empty())
      throw ParameterError("prompt template config needs at least one variant");
  }
  return cfg;
}

Json PromptTemplateConfig::to_json() const {
  return Json{{"tokens",
               {{"instruction_start", instruction_start},
                {"instruction_end", instruction_end},
                {"answer_start", answer_start},
                {"answer_end", answer_end}}},
              {"variants", variants}};
}

namespace {

std::string substitute(std::string text, const std::string &key,
                       const std::string &value) {
  std::string needle = "{" + key + "}";
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
  return text;
}

std::string method_details(const DatasetRecord &r) {
  std::string out = to_string(r.method);
  if (r.ansatz_id)
    out += " with ansatz " + std::to_string(*r.ansatz_id);
  if (r.layers)
    out += (r.ansatz_id ? " and " : " with ") + std::to_string(*r.layers) +
           (*r.layers == 1 ? " layer" : " layers");
  return out;
}

} // namespace

TrainingSample format_prompt(const DatasetRecord &record, int variant_id,
                             const PromptTemplateConfig &config) {
  if (variant_id < 0 || variant_id >= static_cast<int>(config.variants.size()))
    throw ParameterError("unknown prompt variant " + std::to_string(variant_id));

  Json graph = Json::object();
  for (const char *key : {"nodes", "edges", "weights", "arcs"})
    if (record.problem.contains(key))
      graph[key] = record.problem.at(key);

  std::string text = config.variants[static_cast<std::size_t>(variant_id)];
  text = substitute(std::move(text), "kind",
                    record.problem.value("kind", "unknown"));
  text = substitute(std::move(text), "graph", graph.dump());
  text = substitute(std::move(text), "params",
                    record.problem.value("params", Json::object()).dump());
  text = substitute(std::move(text), "hamiltonian", record.hamiltonian_text);
  text = substitute(std::move(text), "method", to_string(record.method));
  text = substitute(std::move(text), "method_details", method_details(record));
  text = substitute(std::move(text), "qubits",
                    std::to_string(record.qubit_count));

  TrainingSample sample;
  sample.variant_id = variant_id;
  sample.text = config.instruction_start + text + config.instruction_end +
                config.answer_start + record.circuit_numeric_qasm +
                config.answer_end;
  return sample;
}

int choose_variant(const std::string &record_id, std::uint64_t seed,
                   int variant_count) {
  if (variant_count < 1)
    throw ParameterError("variant_count must be positive");
  return static_cast<int>(mix_seed(seed, hash_string(record_id)) %
                          static_cast<std::uint64_t>(variant_count));
}

} // namespace quopt
