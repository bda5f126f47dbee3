#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "filterbench/datagen.hpp"
#include "filterbench/filters.hpp"
#include "filterbench/registry.hpp"

namespace filterbench {

// One (scenario x method x classifier x repeat x fold) measurement.
struct RunRecord {
  std::string scenario;
  std::string method;
  std::string classifier;
  int repeat = 0;
  int fold = 0;
  double auc = 0.0;
  double relevant_fraction = 0.0;
  std::vector<std::size_t> selected;
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;
};

struct KPolicy {
  // k for ranking filters: the scenario's relevant-feature count, or a fixed
  // value; subset searches keep their native size either way.
  int fixed = 0;  // 0 = per-scenario relevant count
  std::string describe() const;
};

struct BenchConfig {
  std::vector<std::string> scenarios;    // names; empty = all 13
  std::vector<std::string> methods;      // canonical or aliases; "all" expands
  std::vector<std::string> classifiers = {"nb", "forest"};
  int folds = 10;
  int repeats = 5;
  KPolicy k_policy;
  std::uint64_t master_seed = 0;
  int threads = 1;
  // replaces measured selection wall time with 0 so outputs are
  // byte-reproducible; measured timings are inherently run-dependent
  bool zero_runtime = false;
  int scale_observations = 0;  // 0 = table sizes; else override n
  CostMatrix cost;             // used on imbalanced scenarios
  int classifier_trees = 500;
  DiscretizationSpec disc;
};

// Selects on the (possibly noisy) training fold, trains the classifier on
// the selected columns, scores the clean test fold. Selection wall time only
// is recorded. Cost-sensitive methods run only on imbalanced scenarios.
// Output order is canonical (grid order) regardless of thread count.
std::vector<RunRecord> run_benchmark(
    const BenchConfig& config,
    const std::function<void(const std::string&)>& progress = nullptr);

// pooled per-(scenario, method) stability over all folds x repeats
struct StabilitySummary {
  std::string scenario;
  std::string method;
  double value = 0.0;
  bool defined = false;
  std::size_t sets = 0;
};
std::vector<StabilitySummary> pooled_stability(const std::vector<RunRecord>& records,
                                               const std::vector<std::string>& classifiers);

}  // namespace filterbench
