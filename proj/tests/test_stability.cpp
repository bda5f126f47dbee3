#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "filterbench/bench.hpp"
#include "filterbench/stability.hpp"
#include "test_util.hpp"

using namespace filterbench;

TEST_CASE("stability: identical sets give exactly 1") {
  const std::vector<std::vector<std::size_t>> sets(3, {0, 1});
  CHECK(stability(sets, 5) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("stability: hand-evaluated disjoint singletons give -0.5") {
  const std::vector<std::vector<std::size_t>> sets{{0}, {1}};
  CHECK(stability(sets, 3) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("stability: chance correction centers random selections at 0") {
  Rng rng(2024);
  const std::size_t m = 200, p = 10, k = 3;
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<std::size_t> idx(p);
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(idx);
    sets.push_back({idx.begin(), idx.begin() + k});
  }
  CHECK(std::fabs(stability(sets, p)) < 0.05);
}

TEST_CASE("stability: upper bound and equality condition") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + rng.next_below(6), p = 3 + rng.next_below(8);
    std::vector<std::vector<std::size_t>> sets;
    bool identical = true;
    for (std::size_t s = 0; s < m; ++s) {
      std::vector<std::size_t> set;
      for (std::size_t j = 0; j < p; ++j)
        if (rng.next_double() < 0.4) set.push_back(j);
      sets.push_back(set);
      if (s > 0 && sets[s] != sets[0]) identical = false;
    }
    std::size_t q = 0;
    for (const auto& s : sets) q += s.size();
    if (q == 0 || q == m * p) {
      CHECK_THROWS_AS(stability(sets, p), DegenerateSelection);
      continue;
    }
    const double v = stability(sets, p);
    CHECK(v <= 1.0 + 1e-12);
    if (identical) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    if (v >= 1.0 - 1e-12) CHECK(identical);
  }
}

TEST_CASE("stability: invariant under feature relabeling") {
  Rng rng(9);
  const std::size_t p = 12;
  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm);
  std::vector<std::vector<std::size_t>> sets, relabeled;
  for (int s = 0; s < 8; ++s) {
    std::vector<std::size_t> set, rset;
    for (std::size_t j = 0; j < p; ++j)
      if (rng.next_double() < 0.3) {
        set.push_back(j);
        rset.push_back(perm[j]);
      }
    sets.push_back(set);
    relabeled.push_back(rset);
  }
  std::size_t q = 0;
  for (const auto& s : sets) q += s.size();
  if (q > 0 && q < 8 * p)
    CHECK(stability(sets, p) == doctest::Approx(stability(relabeled, p)).epsilon(1e-12));
}

TEST_CASE("stability: degenerate selections signal instead of clamping") {
  CHECK_THROWS_AS(stability({{}, {}}, 4), DegenerateSelection);
  CHECK_THROWS_AS(stability({{0, 1}, {0, 1}}, 2), DegenerateSelection);
  CHECK_THROWS_AS(stability({{0}}, 4), DegenerateSelection);  // m < 2
}

TEST_CASE("relevant_fraction: arithmetic") {
  std::vector<FeatureRole> roles(10, FeatureRole::Irrelevant);
  for (int j = 0; j < 5; ++j) roles[j] = FeatureRole::Relevant;

  FeatureSet all_rel{{0, 1, 2, 3, 4}, {}};
  CHECK(relevant_fraction(all_rel, roles) == 1.0);
  FeatureSet none_rel{{5, 6, 7}, {}};
  CHECK(relevant_fraction(none_rel, roles) == 0.0);
  FeatureSet some{{0, 1, 2, 7}, {}};
  CHECK(relevant_fraction(some, roles) == doctest::Approx(0.6));
}

TEST_CASE("run_benchmark: grid arithmetic and the reference method") {
  BenchConfig config;
  config.scenarios = {"Baseline"};
  config.methods = {"none", "inf_gain"};
  config.classifiers = {"nb"};
  config.folds = 2;
  config.repeats = 2;
  config.master_seed = 5;
  config.scale_observations = 80;
  config.classifier_trees = 20;
  const auto records = run_benchmark(config);
  CHECK(records.size() == 2 * 1 * 2 * 2);

  for (const auto& r : records) {
    if (r.method != "none") continue;
    CHECK(r.selected.size() == 100);
    CHECK(r.relevant_fraction == 1.0);
  }
}

TEST_CASE("run_benchmark: deterministic and thread-count independent") {
  BenchConfig config;
  config.scenarios = {"Baseline", "Imbalanced_1"};
  config.methods = {"inf_gain", "mim", "relieff_equal_k", "dkm_cost"};
  config.classifiers = {"nb", "forest"};
  config.folds = 2;
  config.repeats = 1;
  config.master_seed = 42;
  config.scale_observations = 60;
  config.classifier_trees = 15;
  config.zero_runtime = true;

  const auto a = run_benchmark(config);
  config.threads = 4;
  const auto b = run_benchmark(config);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].scenario == b[i].scenario);
    CHECK(a[i].method == b[i].method);
    CHECK(a[i].classifier == b[i].classifier);
    CHECK(a[i].auc == b[i].auc);
    CHECK(a[i].selected == b[i].selected);
    CHECK(a[i].relevant_fraction == b[i].relevant_fraction);
    CHECK(a[i].seed == b[i].seed);
  }

  // cost-sensitive methods only on the imbalanced scenario
  for (const auto& r : a)
    if (r.method == "dkm_cost") CHECK(r.scenario == "Imbalanced_1");
  bool found_cost = false;
  for (const auto& r : a) found_cost |= r.method == "dkm_cost";
  CHECK(found_cost);
}

TEST_CASE("run_benchmark: unknown names are rejected") {
  BenchConfig config;
  config.scenarios = {"Baseline"};
  config.methods = {"no_such_method"};
  CHECK_THROWS_AS(run_benchmark(config), UnknownMethod);
  config.methods = {"inf_gain"};
  config.scenarios = {"NoSuchScenario"};
  CHECK_THROWS_AS(run_benchmark(config), UnknownScenario);
}

TEST_CASE("pooled_stability: identical selections across folds give 1") {
  BenchConfig config;
  config.scenarios = {"Baseline"};
  config.methods = {"inf_gain"};
  config.classifiers = {"nb"};
  config.folds = 3;
  config.repeats = 2;
  config.master_seed = 11;
  config.scale_observations = 200;
  const auto records = run_benchmark(config);
  const auto summaries = pooled_stability(records, config.classifiers);
  REQUIRE(summaries.size() == 1);
  CHECK(summaries[0].sets == 6);
  CHECK(summaries[0].defined);
  CHECK(summaries[0].value <= 1.0 + 1e-12);
}

TEST_CASE("run_benchmark: full method registry smoke on an imbalanced scenario") {
  // every Table-style method incl. the cost-sensitive ones runs once
  BenchConfig config;
  config.scenarios = {"Imbalanced_1"};
  config.methods = {"all"};
  config.classifiers = {"nb"};
  config.folds = 2;
  config.repeats = 1;
  config.master_seed = 77;
  config.scale_observations = 60;
  config.classifier_trees = 10;
  config.zero_runtime = true;
  config.threads = 2;
  const auto records = run_benchmark(config);
  const auto names = all_method_names(true);
  CHECK(records.size() == names.size() * 2);  // 2 folds
  for (const auto& r : records) {
    CHECK(r.auc >= 0.0);
    CHECK(r.auc <= 1.0);
    CHECK(!r.selected.empty());
    CHECK(r.relevant_fraction >= 0.0);
    CHECK(r.relevant_fraction <= 1.0);
  }
  // aliases resolve to the same entries
  CHECK(&method_by_name("C:InfGain") == &method_by_name("inf_gain"));
  CHECK(&method_by_name("F:relief") == &method_by_name("C:Relief"));
  CHECK(&method_by_name("p:JMI") == &method_by_name("jmi"));
  CHECK(&method_by_name("m:ranger_impurity") == &method_by_name("ranger_impurity"));
  // 58 source rows resolve onto 57 canonical methods (relief carries two
  // aliases) plus the "none" reference
  CHECK(names.size() == 58);
  std::size_t alias_rows = 0;
  for (const auto& m : method_registry()) alias_rows += m.aliases.size();
  CHECK(alias_rows == 58);
}

TEST_CASE("pooled_stability: the all-features reference pools to 1.0") {
  BenchConfig config;
  config.scenarios = {"Baseline"};
  config.methods = {"none", "mim"};
  config.classifiers = {"nb"};
  config.folds = 2;
  config.repeats = 1;
  config.master_seed = 3;
  config.scale_observations = 60;
  const auto records = run_benchmark(config);
  for (const auto& s : pooled_stability(records, config.classifiers)) {
    CHECK(s.defined);
    if (s.method == "none") CHECK(s.value == 1.0);
  }
}
