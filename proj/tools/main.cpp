// quopt: generate, solve, and evaluate quantum-optimization circuit corpora.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "quopt/formulations.hpp"
#include "quopt/pipeline.hpp"

namespace fs = std::filesystem;
using namespace quopt;

namespace {

Json load_json_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DataError("cannot open: " + path);
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw DataError("malformed JSON: " + path);
  return j;
}

void write_text_file(const std::string &path, const std::string &content) {
  fs::path p(path);
  if (p.has_parent_path())
    fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw DataError("cannot open for writing: " + path);
  out << content;
  if (!out)
    throw DataError("write failed: " + path);
}

struct CommonOpts {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;

  RunConfig resolve() const {
    RunConfig cfg = config.empty()
                        ? RunConfig::desk_default()
                        : RunConfig::from_json(load_json_file(config));
    if (seed)
      cfg.seed = *seed;
    if (workers)
      cfg.workers = *workers;
    return cfg;
  }
};

void add_common(CLI::App *cmd, CommonOpts &opts) {
  cmd->add_option("--config", opts.config, "Run configuration JSON file");
  cmd->add_option("--seed", opts.seed, "Override the configured seed");
  cmd->add_option("--workers", opts.workers, "Override the worker count");
}

int cmd_generate(const CommonOpts &opts, const std::string &out) {
  RunConfig cfg = opts.resolve();
  auto instances = generate_instances(cfg);
  write_instances_jsonl(instances, out);
  std::cerr << "generated " << instances.size() << " instances -> " << out
            << "\n";
  return 0;
}

int cmd_solve(const CommonOpts &opts, const std::string &instances_path,
              const std::string &out) {
  RunConfig cfg = opts.resolve();
  std::vector<ProblemInstance> instances =
      instances_path.empty() ? generate_instances(cfg)
                             : read_instances_jsonl(instances_path);
  SolveStats stats;
  auto records = solve_all(cfg, instances, &stats);
  write_jsonl(records, out);
  std::cerr << "solved " << stats.jobs << " jobs: " << stats.converged
            << " converged, " << (stats.jobs - stats.converged)
            << " unconverged (" << stats.stalled << " stalled) -> " << out
            << "\n";
  return 0;
}

int cmd_build_dataset(const CommonOpts &opts, const std::string &records_path,
                      const std::string &out_dir, double ratio,
                      const std::string &template_path, int sample_count) {
  RunConfig cfg = opts.resolve();
  auto records = read_jsonl(records_path);
  if (records.size() < 2)
    throw DataError("need at least 2 records to split");

  PromptTemplateConfig templates =
      template_path.empty()
          ? PromptTemplateConfig::defaults()
          : PromptTemplateConfig::from_json(load_json_file(template_path));

  auto [train, test] = split(records, ratio, cfg.seed);
  fs::create_directories(out_dir);
  write_jsonl(train, out_dir + "/train.jsonl");
  write_jsonl(test, out_dir + "/test.jsonl");

  std::ostringstream prompts;
  for (const auto &r : train) {
    int variant = choose_variant(r.record_id, cfg.seed,
                                 static_cast<int>(templates.variants.size()));
    TrainingSample sample = format_prompt(r, variant, templates);
    prompts << Json{{"record_id", r.record_id},
                    {"text", sample.text},
                    {"variant_id", sample.variant_id}}
                   .dump()
            << "\n";
  }
  write_text_file(out_dir + "/train_prompts.jsonl", prompts.str());
  write_text_file(out_dir + "/prompt_templates.json",
                  templates.to_json().dump(2) + "\n");

  if (sample_count > 0) {
    auto sampled = sample_test(test, static_cast<std::size_t>(sample_count),
                               cfg.seed);
    write_jsonl(sampled, out_dir + "/test_sample.jsonl");
  }

  std::cerr << "split " << records.size() << " records -> " << train.size()
            << " train / " << test.size() << " test in " << out_dir << "\n";
  return 0;
}

int cmd_emit(const std::string &records_path, const std::string &record_id,
             const std::string &out_dir, bool symbolic) {
  auto records = read_jsonl(records_path);
  fs::create_directories(out_dir);
  int written = 0;
  for (const auto &r : records) {
    if (!record_id.empty() && r.record_id != record_id)
      continue;
    const std::string &qasm =
        symbolic ? r.circuit_symbolic_qasm : r.circuit_numeric_qasm;
    write_text_file(out_dir + "/" + r.record_id + ".qasm", qasm);
    ++written;
  }
  if (!record_id.empty() && written == 0)
    throw DataError("record not found: " + record_id);
  std::cerr << "wrote " << written << " .qasm file(s) to " << out_dir << "\n";
  return 0;
}

int cmd_evaluate(const CommonOpts &opts, const std::string &candidates_dir,
                 const std::string &records_path, const std::string &out_dir) {
  RunConfig cfg = opts.resolve();
  auto records = read_jsonl(records_path);

  std::map<std::string, std::string> candidates;
  for (const auto &entry : fs::directory_iterator(candidates_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".qasm")
      continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    candidates[entry.path().stem().string()] = text.str();
  }

  EvalReport report = evaluate_batch(candidates, records, cfg.seed);
  fs::create_directories(out_dir);
  write_text_file(out_dir + "/report.json", report.to_json().dump(2) + "\n");
  write_text_file(out_dir + "/report_rows.csv", report.rows_csv());

  const auto &a = report.aggregates;
  std::cerr << "evaluated " << a.n_total << " candidates: " << a.n_valid
            << " valid (accuracy " << a.accuracy_rate * 100.0 << "%)\n";
  if (a.mean_delta_e)
    std::cerr << "mean dE " << *a.mean_delta_e << ", median dE "
              << *a.median_delta_e << "\n";
  if (a.mean_kl_gen && a.mean_kl_rand)
    std::cerr << "mean KL(gen) " << *a.mean_kl_gen << ", mean KL(rand) "
              << *a.mean_kl_rand << "\n";
  return 0;
}

int cmd_stats(const std::string &records_path, const std::string &out_dir) {
  auto records = read_jsonl(records_path);
  CorpusStats stats = corpus_stats(records);
  fs::create_directories(out_dir);
  write_text_file(out_dir + "/stats_records.csv", stats.records_csv);
  write_text_file(out_dir + "/stats_problem_method_counts.csv",
                  stats.problem_method_counts_csv);
  write_text_file(out_dir + "/stats_probability_by_qubits.csv",
                  stats.probability_by_qubits_csv);
  write_text_file(out_dir + "/stats_gate_depth_by_method.csv",
                  stats.gate_depth_by_method_csv);
  std::cerr << "wrote 4 CSV tables for " << records.size() << " records to "
            << out_dir << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"quantum-optimization circuit dataset pipeline"};
  app.require_subcommand(1);

  CommonOpts gen_opts;
  std::string gen_out = "instances.jsonl";
  auto *gen = app.add_subcommand("generate", "Generate problem instances");
  add_common(gen, gen_opts);
  gen->add_option("--out", gen_out, "Output instances JSONL");

  CommonOpts solve_opts;
  std::string solve_instances, solve_out = "records.jsonl";
  auto *solve = app.add_subcommand("solve", "Optimize circuits into records");
  add_common(solve, solve_opts);
  solve->add_option("--instances", solve_instances,
                    "Instances JSONL (default: generate from config)");
  solve->add_option("--out", solve_out, "Output records JSONL");

  CommonOpts build_opts;
  std::string build_records = "records.jsonl", build_out = "dataset";
  std::string build_templates;
  double build_ratio = 0.96;
  int build_sample = 0;
  auto *build = app.add_subcommand(
      "build-dataset", "Split records and format SFT prompts");
  add_common(build, build_opts);
  build->add_option("--records", build_records, "Input records JSONL");
  build->add_option("--out", build_out, "Output directory");
  build->add_option("--ratio", build_ratio, "Train fraction (default 0.96)");
  build->add_option("--templates", build_templates,
                    "Prompt template config JSON");
  build->add_option("--sample", build_sample,
                    "Also sample this many test records");

  std::string emit_records = "records.jsonl", emit_id, emit_out = "qasm";
  bool emit_symbolic = false;
  auto *emit_cmd = app.add_subcommand("emit", "Write record circuits as .qasm");
  emit_cmd->add_option("--records", emit_records, "Input records JSONL");
  emit_cmd->add_option("--record-id", emit_id,
                       "Only this record (default: all)");
  emit_cmd->add_option("--out", emit_out, "Output directory");
  emit_cmd->add_flag("--symbolic", emit_symbolic,
                     "Emit the symbolic circuit instead of the numeric one");

  CommonOpts eval_opts;
  std::string eval_candidates, eval_records = "dataset/test.jsonl";
  std::string eval_out = "eval";
  auto *eval = app.add_subcommand("evaluate",
                                  "Score candidate circuits against records");
  add_common(eval, eval_opts);
  eval->add_option("--candidates", eval_candidates,
                   "Directory of <record_id>.qasm files")
      ->required();
  eval->add_option("--records", eval_records, "Reference records JSONL");
  eval->add_option("--out", eval_out, "Output directory");

  std::string stats_records = "records.jsonl", stats_out = "stats";
  auto *stats = app.add_subcommand("stats", "Corpus summary CSV tables");
  stats->add_option("--records", stats_records, "Input records JSONL");
  stats->add_option("--out", stats_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(gen_opts, gen_out);
    if (solve->parsed())
      return cmd_solve(solve_opts, solve_instances, solve_out);
    if (build->parsed())
      return cmd_build_dataset(build_opts, build_records, build_out,
                               build_ratio, build_templates, build_sample);
    if (emit_cmd->parsed())
      return cmd_emit(emit_records, emit_id, emit_out, emit_symbolic);
    if (eval->parsed())
      return cmd_evaluate(eval_opts, eval_candidates, eval_records, eval_out);
    if (stats->parsed())
      return cmd_stats(stats_records, stats_out);
  } catch (const ParameterError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
