#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "filterbench/multivariate.hpp"
#include "test_util.hpp"

using namespace filterbench;

namespace {

using testutil::ToyData;
using testutil::from_toy;
using testutil::greedy_oracle;
using testutil::random_toy;

const std::vector<MiCriterion> kAllCriteria = {
    MiCriterion::MIM,  MiCriterion::JMI,  MiCriterion::JMIM, MiCriterion::NJMIM,
    MiCriterion::DISR, MiCriterion::CMIM, MiCriterion::MRMR, MiCriterion::JIM};

}  // namespace

TEST_CASE("greedy_mi_select: every criterion matches exhaustive recomputation") {
  Rng rng(404);
  for (int trial = 0; trial < 12; ++trial) {
    const ToyData toy = random_toy(32, 4, rng);
    const Dataset ds = from_toy(toy);
    const DiscretizationSpec disc{Discretizer::EqualFrequency, 2};
    // the oracle consumes the same bins; skewed binary columns can collapse
    // into a single bin under the equal-frequency tie rule
    const ToyData binned = testutil::discretized_view(ds, disc);
    for (auto crit : kAllCriteria) {
      CAPTURE(to_string(crit));
      const auto got = greedy_mi_select(ds, crit, 3, disc);
      const auto expected = greedy_oracle(binned, crit, 3);
      CHECK(got.indices == expected);
    }
  }
}

TEST_CASE("greedy_mi_select: k=1 agrees across all criteria") {
  Rng rng(405);
  const ToyData toy = random_toy(40, 5, rng);
  const Dataset ds = from_toy(toy);
  const DiscretizationSpec disc{Discretizer::EqualFrequency, 2};
  const auto first = greedy_mi_select(ds, MiCriterion::MIM, 1, disc).indices;
  for (auto crit : kAllCriteria) {
    CAPTURE(to_string(crit));
    CHECK(greedy_mi_select(ds, crit, 1, disc).indices == first);
  }
}

TEST_CASE("greedy_mi_select: MIM equals select_top_k over per-feature MI") {
  Rng rng(406);
  const Dataset ds = testutil::random_dataset(100, 8, rng, 1.0, 3);
  const DiscretizationSpec disc{Discretizer::EqualFrequency, 5};
  const auto mim = greedy_mi_select(ds, MiCriterion::MIM, 5, disc);

  FeatureWeights mi{"mi", std::vector<double>(8, 0.0), true};
  for (std::size_t j = 0; j < 8; ++j) {
    const auto bins = discretize(ds.column(j), disc);
    mi.weights[j] =
        mutual_information(ContingencyTable::cross(bins, ds.labels(), disc.bins, 2));
  }
  CHECK(mim.indices == select_top_k(mi, 5).indices);
}

TEST_CASE("greedy_mi_select: duplicate feature handling (MRMR vs MIM)") {
  // X0 and X1 identical and maximally relevant: MIM picks the duplicate
  // second, MRMR penalizes it away
  const std::size_t n = 64;
  Dataset ds("dup", n, 3);
  Rng rng(7);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = i < n / 2 ? 0 : 1;
    const int x = rng.next_double() < 0.9 ? y : 1 - y;
    const int w = rng.next_double() < 0.65 ? y : 1 - y;
    ds.set_label(i, y);
    ds(i, 0) = x;
    ds(i, 1) = x;
    ds(i, 2) = w;
  }
  const DiscretizationSpec disc{Discretizer::EqualFrequency, 2};
  const auto mim = greedy_mi_select(ds, MiCriterion::MIM, 2, disc);
  const auto mrmr = greedy_mi_select(ds, MiCriterion::MRMR, 2, disc);
  CHECK(mim.indices == std::vector<std::size_t>{0, 1});
  CHECK(mrmr.indices[0] == 0);
  CHECK(mrmr.indices[1] == 2);

  // CMIM gives an exact duplicate zero conditional information
  const auto cmim = greedy_mi_select(ds, MiCriterion::CMIM, 2, disc);
  CHECK(cmim.indices[1] == 2);
}

TEST_CASE("greedy_mi_select: KOutOfRange") {
  Rng rng(9);
  const Dataset ds = testutil::random_dataset(30, 3, rng);
  CHECK_THROWS_AS(greedy_mi_select(ds, MiCriterion::JMI, 0, {}), KOutOfRange);
  CHECK_THROWS_AS(greedy_mi_select(ds, MiCriterion::JMI, 4, {}), KOutOfRange);
}

TEST_CASE("cfs: single predictive feature among noise") {
  Rng rng(11);
  const std::size_t n = 120, p = 5;
  Dataset ds("cfs", n, p);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = i < n / 2 ? 0 : 1;
    ds.set_label(i, y);
    ds(i, 0) = y + 0.05 * rng.gaussian();
    for (std::size_t j = 1; j < p; ++j) ds(i, j) = rng.gaussian();
  }
  const auto sel = cfs_select(ds, {Discretizer::EqualFrequency, 4});
  REQUIRE(sel.indices.size() == 1);
  CHECK(sel.indices[0] == 0);

  // merit of the singleton equals its symmetrical uncertainty
  const auto su = score_stat(ds, StatScoreMethod::SymmetricalUncertainty,
                             {Discretizer::EqualFrequency, 4});
  CHECK(sel.scores.back() == doctest::Approx(su.weights[0]).epsilon(1e-12));
}

TEST_CASE("cfs: duplicated relevant feature is taken only once") {
  Rng rng(13);
  const std::size_t n = 100;
  Dataset ds("dup", n, 4);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = i < n / 2 ? 0 : 1;
    const double x = y + 0.1 * rng.gaussian();
    ds.set_label(i, y);
    ds(i, 0) = x;
    ds(i, 1) = x;  // exact duplicate
    ds(i, 2) = rng.gaussian();
    ds(i, 3) = rng.gaussian();
  }
  const auto sel = cfs_select(ds, {Discretizer::EqualFrequency, 4});
  const bool has0 = std::find(sel.indices.begin(), sel.indices.end(), 0) != sel.indices.end();
  const bool has1 = std::find(sel.indices.begin(), sel.indices.end(), 1) != sel.indices.end();
  CHECK(has0 != has1);  // exactly one copy
}

TEST_CASE("cfs: all-constant features give an empty set") {
  Dataset ds("const", 30, 3);
  for (std::size_t i = 0; i < 30; ++i) {
    ds.set_label(i, static_cast<int>(i % 2));
    for (std::size_t j = 0; j < 3; ++j) ds(i, j) = 1.0;
  }
  CHECK(cfs_select(ds, {}).indices.empty());
}

TEST_CASE("consistency: label-copy feature is found alone") {
  Rng rng(17);
  const std::size_t n = 80;
  Dataset ds("cons", n, 4);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = i < n / 2 ? 0 : 1;
    ds.set_label(i, y);
    ds(i, 0) = rng.gaussian();
    ds(i, 1) = y;  // exact copy
    ds(i, 2) = rng.gaussian();
    ds(i, 3) = rng.gaussian();
  }
  const auto sel = consistency_select(ds, {Discretizer::EqualFrequency, 2});
  CHECK(sel.indices == std::vector<std::size_t>{1});
  CHECK(sel.scores.back() == doctest::Approx(1.0));
}

TEST_CASE("consistency: minimal fully consistent subset on an XOR toy") {
  // y = x0 xor x1; x2 a balanced uninformative bit, x3 = copy of x2.
  // Exhaustive search over all 15 subsets: {x0, x1} is the unique minimal
  // fully consistent subset.
  const std::size_t n = 32;
  Dataset ds("xor", n, 4);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = static_cast<int>(i & 1), b = static_cast<int>((i >> 1) & 1);
    const int c = static_cast<int>((i >> 2) & 1);
    ds(i, 0) = a;
    ds(i, 1) = b;
    ds(i, 2) = c;
    ds(i, 3) = c;
    ds.set_label(i, a ^ b);
  }
  const auto sel = consistency_select(ds, {Discretizer::EqualFrequency, 2});
  std::vector<std::size_t> sorted = sel.indices;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rf_importance: label copy dominates, constants at zero, reproducible") {
  Rng rng(23);
  const std::size_t n = 150, p = 6;
  Dataset ds("rf", n, p);
  for (std::size_t i = 0; i < n; ++i) {
    const int y = i < n / 2 ? 0 : 1;
    ds.set_label(i, y);
    ds(i, 0) = y + 0.05 * rng.gaussian();
    ds(i, 1) = 4.0;  // constant
    for (std::size_t j = 2; j < p; ++j) ds(i, j) = rng.gaussian();
  }
  for (auto kind : {ImportanceKind::Impurity, ImportanceKind::Permutation}) {
    CAPTURE(kind == ImportanceKind::Impurity ? "impurity" : "permutation");
    Rng r1(5), r2(5);
    const auto w1 = rf_importance(ds, kind, 100, r1);
    const auto w2 = rf_importance(ds, kind, 100, r2);
    CHECK(w1.weights == w2.weights);  // determinism
    CHECK(w1.weights[1] == 0.0);
    std::size_t argmax = 0;
    for (std::size_t j = 1; j < p; ++j)
      if (w1.weights[j] > w1.weights[argmax]) argmax = j;
    CHECK(argmax == 0);
  }
}
