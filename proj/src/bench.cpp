#include "filterbench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <chrono>
#include <thread>

#include "filterbench/cv.hpp"
#include "filterbench/learners.hpp"
#include "filterbench/metrics.hpp"
#include "filterbench/stability.hpp"

namespace filterbench {

std::string KPolicy::describe() const {
  return fixed > 0 ? "fixed:" + std::to_string(fixed) : "relevant";
}

namespace {

struct Cell {
  std::size_t scenario_idx;
  std::size_t method_idx;
  int repeat;
  int fold;
};

struct ScenarioRun {
  ScenarioSpec spec;
  ScenarioData data;
  FoldPlan plan;
  std::size_t k;
};

std::vector<std::string> expand_methods(const std::vector<std::string>& methods) {
  std::vector<std::string> out;
  for (const auto& m : methods) {
    if (m == "all") {
      for (const auto& name : all_method_names(true)) out.push_back(name);
    } else {
      out.push_back(method_by_name(m).name);  // canonicalize, validates
    }
  }
  // dedupe, keep first occurrence
  std::vector<std::string> unique;
  for (const auto& m : out)
    if (std::find(unique.begin(), unique.end(), m) == unique.end()) unique.push_back(m);
  return unique;
}

}  // namespace

std::vector<RunRecord> run_benchmark(
    const BenchConfig& config, const std::function<void(const std::string&)>& progress) {
  std::vector<std::string> scenario_names = config.scenarios;
  if (scenario_names.empty())
    for (const auto& s : scenario_table()) scenario_names.push_back(s.name);
  const std::vector<std::string> method_names = expand_methods(config.methods);
  for (const auto& c : config.classifiers)
    if (c != "nb" && c != "forest") throw Error("unknown classifier: " + c);
  config.cost.validate();

  // prepare scenarios: data generation and one shared fold allocation per
  // scenario, so every method sees the same folds
  std::vector<ScenarioRun> runs;
  runs.reserve(scenario_names.size());
  for (const auto& name : scenario_names) {
    ScenarioRun run;
    run.spec = scenario_by_name(name);
    if (config.scale_observations > 0) run.spec.observations = config.scale_observations;
    if (progress) progress("generate " + name);
    run.data = generate_with_noise(run.spec, config.master_seed);
    Rng cv_rng(derive_seed(config.master_seed, {std::string("cv"), name}));
    run.plan = plan_cv(run.data.clean.labels(), config.folds, config.repeats, cv_rng);
    run.k = config.k_policy.fixed > 0
                ? static_cast<std::size_t>(config.k_policy.fixed)
                : static_cast<std::size_t>(std::max(run.spec.features_relevant, 1));
    runs.push_back(std::move(run));
  }

  // grid of selection cells; cost-sensitive methods only on imbalanced data
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    const bool imbalanced = runs[s].spec.minority_fraction < 0.5;
    for (std::size_t m = 0; m < method_names.size(); ++m) {
      if (method_by_name(method_names[m]).cost_sensitive && !imbalanced) continue;
      for (int r = 0; r < config.repeats; ++r)
        for (int f = 0; f < config.folds; ++f) cells.push_back({s, m, r, f});
    }
  }

  const std::size_t per_cell = config.classifiers.size();
  std::vector<RunRecord> records(cells.size() * per_cell);

  auto work = [&](std::size_t cell_idx) {
    const Cell& cell = cells[cell_idx];
    const ScenarioRun& run = runs[cell.scenario_idx];
    const std::string& method_name = method_names[cell.method_idx];
    const MethodInfo& method = method_by_name(method_name);
    const auto& fa =
        run.plan.assignments[static_cast<std::size_t>(cell.repeat) * config.folds + cell.fold];

    const Dataset train_noisy = run.data.noisy.subset_rows(fa.train);
    const Dataset test_clean = run.data.clean.subset_rows(fa.test);

    SelectionContext ctx{train_noisy, run.k, config.disc,
                         derive_seed(config.master_seed,
                                     {std::string("select"), run.spec.name, method_name,
                                      cell.repeat, cell.fold}),
                         std::nullopt};
    if (run.spec.minority_fraction < 0.5) ctx.cost = config.cost;

    const auto t0 = std::chrono::steady_clock::now();
    const FeatureSet selected = method.select(ctx);
    const auto t1 = std::chrono::steady_clock::now();
    const double seconds =
        config.zero_runtime ? 0.0 : std::chrono::duration<double>(t1 - t0).count();

    std::vector<std::size_t> sorted_sel = selected.indices;
    std::sort(sorted_sel.begin(), sorted_sel.end());
    const Dataset train_sel = train_noisy.subset_cols(sorted_sel);
    const Dataset test_sel = test_clean.subset_cols(sorted_sel);
    const double rel_frac = relevant_fraction(selected, run.data.clean.roles());

    for (std::size_t c = 0; c < config.classifiers.size(); ++c) {
      const std::string& clf = config.classifiers[c];
      RunRecord rec;
      rec.scenario = run.spec.name;
      rec.method = method_name;
      rec.classifier = clf;
      rec.repeat = cell.repeat;
      rec.fold = cell.fold;
      rec.selected = sorted_sel;
      rec.runtime_seconds = seconds;
      rec.relevant_fraction = rel_frac;
      rec.seed = ctx.seed;

      std::vector<double> scores;
      if (clf == "nb") {
        const NbModel model = nb_fit(train_sel);
        scores = nb_score(model, test_sel);
      } else {
        ForestParams params;
        params.trees = config.classifier_trees;
        Rng rng(derive_seed(config.master_seed,
                            {std::string("classifier"), run.spec.name, clf, method_name,
                             cell.repeat, cell.fold}));
        const ForestModel model = forest_fit(train_sel, params, rng);
        scores = forest_score(model, test_sel);
      }
      rec.auc = auc(scores, test_sel.labels());
      records[cell_idx * per_cell + c] = std::move(rec);
    }
  };

  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::string first_error;
  auto guarded = [&](std::size_t i) {
    try {
      work(i);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (first_error.empty()) {
        const Cell& cell = cells[i];
        first_error = "cell (" + runs[cell.scenario_idx].spec.name + ", " +
                      method_names[cell.method_idx] + ", repeat " +
                      std::to_string(cell.repeat) + ", fold " + std::to_string(cell.fold) +
                      "): " + e.what();
      }
      failed = true;
    }
  };

  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < cells.size() && !failed; ++i) {
      guarded(i);
      if (progress && (i + 1) % 50 == 0)
        progress("cell " + std::to_string(i + 1) + "/" + std::to_string(cells.size()));
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size() || failed) return;
          guarded(i);
        }
      });
    for (auto& t : pool) t.join();
  }
  if (failed) throw Error(first_error);
  return records;
}

std::vector<StabilitySummary> pooled_stability(const std::vector<RunRecord>& records,
                                               const std::vector<std::string>& classifiers) {
  // selection is classifier-independent; pool the sets of the first
  // classifier to avoid double counting
  const std::string first = classifiers.empty() ? "" : classifiers.front();
  std::vector<StabilitySummary> out;
  std::size_t p_hint = 0;

  std::vector<std::pair<std::string, std::string>> keys;
  for (const auto& rec : records) {
    if (!first.empty() && rec.classifier != first) continue;
    const auto key = std::make_pair(rec.scenario, rec.method);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& [scenario, method] : keys) {
    std::vector<std::vector<std::size_t>> sets;
    for (const auto& rec : records) {
      if (rec.scenario != scenario || rec.method != method) continue;
      if (!first.empty() && rec.classifier != first) continue;
      sets.push_back(rec.selected);
      for (auto j : rec.selected) p_hint = std::max(p_hint, j + 1);
    }
    const std::size_t p =
        static_cast<std::size_t>(scenario_by_name(scenario).features_total);
    StabilitySummary summary{scenario, method, 0.0, false, sets.size()};
    try {
      summary.value = stability(sets, std::max(p, p_hint));
      summary.defined = true;
    } catch (const DegenerateSelection&) {
      // the metric is 0/0 on all-full (or all-empty) selections, but those
      // sets are identical, where the metric attains its maximum; the "none"
      // reference lands here by construction
      bool identical = sets.size() >= 2;
      for (const auto& s : sets) identical &= s == sets.front();
      if (identical) {
        summary.value = 1.0;
        summary.defined = true;
      }
    }
    out.push_back(std::move(summary));
  }
  return out;
}

}  // namespace filterbench
