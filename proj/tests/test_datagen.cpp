#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "filterbench/datagen.hpp"
#include "filterbench/metrics.hpp"
#include "test_util.hpp"

using namespace filterbench;

TEST_CASE("scenario_table: 13 rows with the documented properties") {
  const auto table = scenario_table();
  REQUIRE(table.size() == 13);
  CHECK(table[0].name == "Baseline");
  CHECK(table[0].observations == 2500);
  CHECK(table[0].features_total == 100);
  CHECK(table[0].features_relevant == 10);
  CHECK(table[0].features_redundant == 0);
  CHECK(table[0].minority_fraction == 0.5);

  const auto& att2 = scenario_by_name("AttNoise_2");
  CHECK(att2.attribute_noise == 0.2);
  CHECK(att2.class_noise == 0.0);

  CHECK(scenario_by_name("Redundant_2").features_redundant == 20);
  CHECK(scenario_by_name("Imbalanced_1").minority_fraction == 0.2);
  CHECK(scenario_by_name("Imbalanced_2").minority_fraction == 0.1);
  const auto& dim2 = scenario_by_name("Dimensionality_2");
  CHECK(dim2.observations == 500);
  CHECK(dim2.features_total == 1000);
  CHECK(dim2.features_relevant == 30);
  CHECK_THROWS_AS(scenario_by_name("Dimensionality_3"), UnknownScenario);
}

TEST_CASE("generate: shapes, roles, class sizes") {
  ScenarioSpec spec = scenario_by_name("Baseline");
  spec.observations = 300;  // desk scale
  Rng rng(42);
  const Dataset ds = generate(spec, rng);
  ds.validate();
  CHECK(ds.rows() == 300);
  CHECK(ds.cols() == 100);
  CHECK(ds.count_role(FeatureRole::Relevant) == 10);
  CHECK(ds.count_role(FeatureRole::Redundant) == 0);
  CHECK(ds.count_role(FeatureRole::Irrelevant) == 90);
  int minority = 0;
  for (std::size_t i = 0; i < ds.rows(); ++i) minority += ds.label(i);
  CHECK(minority == 150);

  ScenarioSpec imb = scenario_by_name("Imbalanced_2");
  imb.observations = 400;
  Rng rng2(9);
  const Dataset ds2 = generate(imb, rng2);
  int minority2 = 0;
  for (std::size_t i = 0; i < ds2.rows(); ++i) minority2 += ds2.label(i);
  CHECK(minority2 == 40);
}

TEST_CASE("generate: all-relevant corner keeps role bookkeeping") {
  ScenarioSpec spec{"tiny", 60, 5, 5, 0, 0.0, 0.0, 0.5};
  Rng rng(3);
  const Dataset ds = generate(spec, rng);
  CHECK(ds.count_role(FeatureRole::Relevant) == 5);
}

TEST_CASE("generate: deterministic given (spec, seed)") {
  ScenarioSpec spec = scenario_by_name("Redundant_1");
  spec.observations = 120;
  Rng a(5), b(5);
  const Dataset da = generate(spec, a), db = generate(spec, b);
  REQUIRE(da.rows() == db.rows());
  for (std::size_t i = 0; i < da.rows(); ++i) {
    CHECK(da.label(i) == db.label(i));
    for (std::size_t j = 0; j < da.cols(); ++j) CHECK(da(i, j) == db(i, j));
  }
}

TEST_CASE("generate: relevant features carry signal, redundant ones sit in the span") {
  // statistical check over several seeds
  double rel_auc = 0.0, irr_auc = 0.0;
  int rel_n = 0, irr_n = 0;
  double min_r2 = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ScenarioSpec spec{"probe", 400, 12, 4, 3, 0.0, 0.0, 0.5};
    Rng rng(seed);
    const Dataset ds = generate(spec, rng);

    std::vector<std::size_t> rel, red;
    for (std::size_t j = 0; j < ds.cols(); ++j) {
      const auto col = ds.column(j);
      const double a = std::max(auc(col, ds.labels()), 1.0 - auc(col, ds.labels()));
      if (ds.role(j) == FeatureRole::Relevant) {
        rel_auc += a;
        ++rel_n;
        rel.push_back(j);
      } else if (ds.role(j) == FeatureRole::Irrelevant) {
        irr_auc += a;
        ++irr_n;
      }
      if (ds.role(j) == FeatureRole::Redundant) red.push_back(j);
    }

    // R^2 of each redundant column on the relevant block (with intercept)
    for (auto target : red) {
      const std::size_t q = rel.size() + 1;
      std::vector<std::vector<double>> x(ds.rows(), std::vector<double>(q, 1.0));
      std::vector<double> y(ds.rows());
      for (std::size_t i = 0; i < ds.rows(); ++i) {
        for (std::size_t c = 0; c < rel.size(); ++c) x[i][c + 1] = ds(i, rel[c]);
        y[i] = ds(i, target);
      }
      const auto fit = testutil::sandwich_oracle(x, y);
      double sse = 0.0, sst = 0.0, mean = 0.0;
      for (double v : y) mean += v;
      mean /= static_cast<double>(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        double f = 0.0;
        for (std::size_t c = 0; c < q; ++c) f += x[i][c] * fit.beta[c];
        sse += (y[i] - f) * (y[i] - f);
        sst += (y[i] - mean) * (y[i] - mean);
      }
      min_r2 = std::min(min_r2, 1.0 - sse / sst);
    }
  }
  CHECK(rel_auc / rel_n > irr_auc / irr_n);
  CHECK(min_r2 > 0.9);
}

TEST_CASE("inject_class_noise: exact flip counts") {
  ScenarioSpec spec{"noise", 200, 4, 2, 0, 0.0, 0.0, 0.5};
  Rng rng(1);
  const Dataset ds = generate(spec, rng);

  Rng r0(2);
  const Dataset same = inject_class_noise(ds, 0.0, r0);
  int flips = 0;
  for (std::size_t i = 0; i < ds.rows(); ++i) flips += same.label(i) != ds.label(i);
  CHECK(flips == 0);

  Rng r1(3);
  const Dataset all = inject_class_noise(ds, 1.0, r1);
  flips = 0;
  for (std::size_t i = 0; i < ds.rows(); ++i) flips += all.label(i) != ds.label(i);
  CHECK(flips == 200);

  Rng r2(4);
  const Dataset some = inject_class_noise(ds, 0.3, r2);
  flips = 0;
  for (std::size_t i = 0; i < ds.rows(); ++i) flips += some.label(i) != ds.label(i);
  CHECK(flips == 60);

  // features untouched
  for (std::size_t i = 0; i < ds.rows(); ++i)
    for (std::size_t j = 0; j < ds.cols(); ++j) CHECK(some(i, j) == ds(i, j));

  Rng r3(5);
  CHECK_THROWS_AS(inject_class_noise(ds, 1.5, r3), RateOutOfRange);
}

TEST_CASE("inject_attribute_noise: sd tracks rate, labels untouched") {
  ScenarioSpec spec{"anoise", 2500, 8, 3, 0, 0.0, 0.0, 0.5};
  Rng rng(6);
  const Dataset ds = generate(spec, rng);

  Rng r0(7);
  const Dataset same = inject_attribute_noise(ds, 0.0, r0);
  for (std::size_t i = 0; i < ds.rows(); ++i)
    for (std::size_t j = 0; j < ds.cols(); ++j) CHECK(same(i, j) == ds(i, j));

  Rng r1(8);
  const double rate = 0.3;
  const Dataset noisy = inject_attribute_noise(ds, rate, r1);
  for (std::size_t i = 0; i < ds.rows(); ++i) CHECK(noisy.label(i) == ds.label(i));
  for (std::size_t j = 0; j < ds.cols(); ++j) {
    // sample sd of both the original column and the added noise
    double mean = 0.0, nmean = 0.0;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
      mean += ds(i, j);
      nmean += noisy(i, j) - ds(i, j);
    }
    mean /= static_cast<double>(ds.rows());
    nmean /= static_cast<double>(ds.rows());
    double ss = 0.0, nss = 0.0;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
      ss += (ds(i, j) - mean) * (ds(i, j) - mean);
      const double d = noisy(i, j) - ds(i, j) - nmean;
      nss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(ds.rows() - 1));
    const double noise_sd = std::sqrt(nss / static_cast<double>(ds.rows() - 1));
    CHECK(noise_sd == doctest::Approx(rate * sd).epsilon(0.10));
  }
}

TEST_CASE("inject_attribute_noise: constant feature unchanged") {
  Dataset ds("const", 50, 2);
  for (std::size_t i = 0; i < 50; ++i) {
    ds.set_label(i, static_cast<int>(i % 2));
    ds(i, 0) = 3.25;
    ds(i, 1) = static_cast<double>(i);
  }
  Rng rng(9);
  const Dataset noisy = inject_attribute_noise(ds, 0.2, rng);
  for (std::size_t i = 0; i < 50; ++i) CHECK(noisy(i, 0) == 3.25);
}

TEST_CASE("generate_with_noise: noisy twin shares instance identity") {
  ScenarioSpec spec = scenario_by_name("ClassNoise_2");
  spec.observations = 200;
  const ScenarioData data = generate_with_noise(spec, 77);
  CHECK(data.clean.rows() == data.noisy.rows());
  int flips = 0;
  for (std::size_t i = 0; i < data.clean.rows(); ++i) {
    flips += data.clean.label(i) != data.noisy.label(i);
    for (std::size_t j = 0; j < data.clean.cols(); ++j)
      CHECK(data.clean(i, j) == data.noisy(i, j));
  }
  CHECK(flips == 40);  // 0.2 * 200
}
