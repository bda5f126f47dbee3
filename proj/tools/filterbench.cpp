#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "filterbench/pipeline.hpp"

namespace {

using filterbench::RunConfig;

// config file first, flags win
void load_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.contains("scenarios")) config.scenarios = j["scenarios"].get<std::vector<std::string>>();
  if (j.contains("methods")) config.methods = j["methods"].get<std::vector<std::string>>();
  if (j.contains("classifiers"))
    config.classifiers = j["classifiers"].get<std::vector<std::string>>();
  if (j.contains("folds")) config.folds = j["folds"].get<int>();
  if (j.contains("repeats")) config.repeats = j["repeats"].get<int>();
  if (j.contains("k")) config.fixed_k = j["k"].get<int>();
  if (j.contains("seed")) config.master_seed = j["seed"].get<std::uint64_t>();
  if (j.contains("threads")) config.threads = j["threads"].get<int>();
  if (j.contains("zero_runtime")) config.zero_runtime = j["zero_runtime"].get<bool>();
  if (j.contains("scale_observations"))
    config.scale_observations = j["scale_observations"].get<int>();
  if (j.contains("classifier_trees"))
    config.classifier_trees = j["classifier_trees"].get<int>();
  if (j.contains("out")) config.out_dir = j["out"].get<std::string>();
}

int thread_default() {
  if (const char* env = std::getenv("FILTERBENCH_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"filterbench - feature selection filter benchmark"};
  app.require_subcommand(1);

  RunConfig config;
  config.threads = thread_default();
  std::string config_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file; flags override it");
    cmd->add_option("--seed", config.master_seed, "master seed");
    cmd->add_option("--out", config.out_dir, "output directory");
    cmd->add_flag("--quiet", config.quiet, "suppress progress output");
  };

  auto* generate = app.add_subcommand("generate", "write scenario datasets");
  add_common(generate);
  generate->add_option("--scenario", config.scenarios, "scenario name(s) or 'all'");
  generate->add_option("--scale-observations", config.scale_observations,
                       "override the observation count");

  auto* bench = app.add_subcommand("bench", "run the selection benchmark");
  add_common(bench);
  bench->add_option("--scenario", config.scenarios, "scenario name(s) or 'all'");
  bench->add_option("--methods", config.methods, "method name(s) or 'all'");
  bench->add_option("--classifiers", config.classifiers, "nb and/or forest");
  bench->add_option("--folds", config.folds, "cross-validation folds");
  bench->add_option("--repeats", config.repeats, "cross-validation repeats");
  bench->add_option("--k", config.fixed_k, "fixed selection size (default: relevant count)");
  bench->add_option("--threads", config.threads, "worker threads");
  bench->add_flag("--zero-runtime", config.zero_runtime,
                  "record 0 for selection runtime (byte-reproducible outputs)");
  bench->add_option("--scale-observations", config.scale_observations,
                    "override the observation count");
  bench->add_option("--classifier-trees", config.classifier_trees,
                    "trees in the forest classifier");

  auto* analyze = app.add_subcommand("analyze", "fit criterion models from results");
  add_common(analyze);
  analyze->add_option("--runs", config.runs_csv, "results csv from bench")->required();
  analyze->add_option("--criterion", config.criterion,
                      "auc, relevant_fraction, stability or runtime");

  auto* report = app.add_subcommand("report", "grade matrix and rank summaries");
  add_common(report);
  report->add_option("--runs", config.runs_csv, "results csv from bench")->required();

  // parse twice so a config file loads before flags override
  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      RunConfig from_file;
      from_file.threads = thread_default();
      load_config_file(config_path, from_file);
      config = from_file;
      app.clear();
      app.parse(argc, argv);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  if (generate->parsed()) return filterbench::cmd_generate(config, std::cerr);
  if (bench->parsed()) return filterbench::cmd_bench(config, std::cerr);
  if (analyze->parsed()) return filterbench::cmd_analyze(config, std::cerr);
  if (report->parsed()) return filterbench::cmd_report(config, std::cerr);
  return 2;
}
