#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "filterbench/analysis.hpp"
#include "filterbench/bench.hpp"

namespace filterbench {

// Shared by the CLI and the test suites so pipelines can run in-process.
struct RunConfig {
  std::vector<std::string> scenarios = {"all"};
  std::vector<std::string> methods = {"all"};
  std::vector<std::string> classifiers = {"nb", "forest"};
  int folds = 10;
  int repeats = 5;
  int fixed_k = 0;  // 0 = per-scenario relevant count
  std::uint64_t master_seed = 0;
  int threads = 1;
  bool zero_runtime = false;
  int scale_observations = 0;
  int classifier_trees = 500;
  std::string out_dir = ".";
  std::string runs_csv;          // analyze/report input
  std::string criterion = "auc"; // analyze outcome
  bool quiet = false;
};

BenchConfig to_bench_config(const RunConfig& config);

// exit codes: 0 ok, 2 configuration/schema error, 3 runtime failure
int cmd_generate(const RunConfig& config, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& err);
int cmd_analyze(const RunConfig& config, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& err);

// scenario groups mirroring the four benchmark questions; Baseline belongs
// to each group as the zero point
std::vector<std::string> scenario_group_names();
std::vector<std::string> scenarios_in_group(const std::string& group);

}  // namespace filterbench
