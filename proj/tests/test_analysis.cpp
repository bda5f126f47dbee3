#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "filterbench/analysis.hpp"
#include "test_util.hpp"

using namespace filterbench;

namespace {

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  std::vector<double> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace

TEST_CASE("ols: exact line and constant outcome") {
  const std::vector<std::vector<double>> x{{1, 1}, {1, 2}, {1, 3}};
  const std::vector<double> y{1, 2, 3};
  const auto model = ols_robust(flatten(x), 2, y, SeKind::HC0);
  CHECK(model.coefficients[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(model.coefficients[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> yc{2, 2, 2};
  const auto flat = ols_robust(flatten(x), 2, yc, SeKind::HC0);
  CHECK(flat.coefficients[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(flat.r_squared == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ols: HC0 matches the direct sandwich oracle on a 5-point fixture") {
  // heteroskedastic by construction
  const std::vector<std::vector<double>> x{
      {1, 0.0}, {1, 1.0}, {1, 2.0}, {1, 3.0}, {1, 4.0}};
  const std::vector<double> y{0.1, 1.3, 1.8, 3.9, 3.2};
  const auto model = ols_robust(flatten(x), 2, y, SeKind::HC0);
  const auto oracle = testutil::sandwich_oracle(x, y);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(model.coefficients[j] == doctest::Approx(oracle.beta[j]).epsilon(1e-9));
    CHECK(model.robust_se[j] == doctest::Approx(oracle.hc0_se[j]).epsilon(1e-9));
  }
  // HC1 scales the covariance by n/(n-q)
  const auto hc1 = ols_robust(flatten(x), 2, y, SeKind::HC1);
  const double scale = std::sqrt(5.0 / 3.0);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK(hc1.robust_se[j] == doctest::Approx(model.robust_se[j] * scale).epsilon(1e-12));
}

TEST_CASE("ols: sandwich agreement and residual orthogonality on random designs") {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 20 + rng.next_below(80);
    const std::size_t q = 2 + rng.next_below(4);
    std::vector<std::vector<double>> x(n, std::vector<double>(q, 1.0));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 1; j < q; ++j) x[i][j] = rng.gaussian();
      y[i] = rng.gaussian() * (1.0 + 0.5 * std::fabs(x[i][1]));
    }
    const auto model = ols_robust(flatten(x), q, y, SeKind::HC0);
    const auto oracle = testutil::sandwich_oracle(x, y);
    for (std::size_t j = 0; j < q; ++j) {
      CHECK(model.coefficients[j] == doctest::Approx(oracle.beta[j]).epsilon(1e-8));
      CHECK(model.robust_se[j] == doctest::Approx(oracle.hc0_se[j]).epsilon(1e-8));
    }
    // |X'e|_inf < 1e-8 * ||y||
    double ynorm = 0.0;
    for (double v : y) ynorm += v * v;
    ynorm = std::sqrt(ynorm);
    for (std::size_t j = 0; j < q; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t c = 0; c < q; ++c) fit += x[i][c] * model.coefficients[c];
        dot += x[i][j] * (y[i] - fit);
      }
      CHECK(std::fabs(dot) < 1e-8 * std::max(ynorm, 1.0));
    }
  }
}

TEST_CASE("ols: rank deficiency detected") {
  // second column duplicates the intercept
  const std::vector<std::vector<double>> x{{1, 1}, {1, 1}, {1, 1}, {1, 1}};
  const std::vector<double> y{1, 2, 3, 4};
  CHECK_THROWS_AS(ols_robust(flatten(x), 2, y, SeKind::HC0), RankDeficient);
}

TEST_CASE("fit_criterion_model: constructed method effects") {
  // two methods, one uniformly +0.05 AUC over the reference
  std::vector<RunRecord> records;
  Rng rng(3);
  for (int fold = 0; fold < 10; ++fold) {
    const double base = 0.60 + 0.001 * static_cast<double>(fold % 3);
    RunRecord none;
    none.scenario = "Baseline";
    none.method = "none";
    none.classifier = "nb";
    none.fold = fold;
    none.auc = base;
    records.push_back(none);
    RunRecord lift = none;
    lift.method = "inf_gain";
    lift.auc = base + 0.05;
    records.push_back(lift);
    RunRecord same = none;
    same.method = "gini";
    same.auc = base;
    records.push_back(same);
  }
  RegressionSpec spec;
  spec.outcome = Criterion::PredictiveAuc;
  const auto model = fit_criterion_model(records, spec);
  REQUIRE(model.terms.size() == 3);
  CHECK(model.terms[0] == "(Intercept)");
  // terms sorted: gini before inf_gain
  CHECK(model.terms[1] == "method:gini");
  CHECK(model.terms[2] == "method:inf_gain");
  CHECK(model.coefficients[1] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(model.coefficients[2] == doctest::Approx(0.05).epsilon(1e-9));
  // base values cycle 0.600/0.601/0.602 over folds 0..9: mean 0.6009
  CHECK(model.coefficients[0] == doctest::Approx(0.6009).epsilon(1e-9));

  // dummy-encoding identity: reference mean + coefficient = method mean
  double ref_mean = 0.0, lift_mean = 0.0;
  for (const auto& r : records) {
    if (r.method == "none") ref_mean += r.auc / 10.0;
    if (r.method == "inf_gain") lift_mean += r.auc / 10.0;
  }
  CHECK(model.coefficients[0] + model.coefficients[2] ==
        doctest::Approx(lift_mean).epsilon(1e-9));
  CHECK(model.coefficients[0] == doctest::Approx(ref_mean).epsilon(1e-9));
}

TEST_CASE("fit_criterion_model: missing reference throws") {
  std::vector<RunRecord> records(1);
  records[0].scenario = "Baseline";
  records[0].method = "inf_gain";
  records[0].classifier = "nb";
  records[0].auc = 0.7;
  RegressionSpec spec;
  CHECK_THROWS_AS(fit_criterion_model(records, spec), MissingReference);
}

TEST_CASE("welch_t: hand values") {
  const auto same = welch_t({1, 2, 3}, {1, 2, 3});
  CHECK(same.t == doctest::Approx(0.0));
  CHECK(same.cohens_d == doctest::Approx(0.0));
  CHECK(same.p_one_sided == doctest::Approx(0.5).epsilon(1e-9));

  const auto res = welch_t({1, 2, 3}, {4, 5, 6});
  CHECK(res.cohens_d == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(res.t == doctest::Approx(-3.674).epsilon(1e-3));
  CHECK(res.df == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(res.p_one_sided > 0.97);  // negative t, testing A > B

  CHECK_THROWS_AS(welch_t({1}, {2, 3}), DegenerateGroup);
  CHECK_THROWS_AS(welch_t({2, 2}, {2, 2}), DegenerateGroup);
}

TEST_CASE("welch_t: antisymmetry and null p-value distribution") {
  Rng rng(17);
  const auto a = welch_t({1.0, 2.5, 3.0, 4.5}, {2.0, 2.1, 5.0});
  const auto b = welch_t({2.0, 2.1, 5.0}, {1.0, 2.5, 3.0, 4.5});
  CHECK(a.t == doctest::Approx(-b.t).epsilon(1e-12));
  CHECK(a.cohens_d == doctest::Approx(-b.cohens_d).epsilon(1e-12));

  // one-sided p approximately uniform under the null (KS distance < 0.05)
  const int trials = 1000;
  std::vector<double> pvals;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> ga(12), gb(12);
    for (auto& v : ga) v = rng.gaussian();
    for (auto& v : gb) v = rng.gaussian();
    pvals.push_back(welch_t(ga, gb).p_one_sided);
  }
  std::sort(pvals.begin(), pvals.end());
  double ks = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double empirical = static_cast<double>(i + 1) / trials;
    ks = std::max(ks, std::fabs(empirical - pvals[i]));
  }
  CHECK(ks < 0.05);
}

TEST_CASE("pearson_r: hand values and affine invariance") {
  const std::vector<double> x{1, 2, 3, 4};
  const auto perfect = pearson_r(x, {3, 5, 7, 9});  // y = 2x+1
  CHECK(perfect.r == doctest::Approx(1.0).epsilon(1e-12));
  const auto anti = pearson_r(x, {-1, -2, -3, -4});
  CHECK(anti.r == doctest::Approx(-1.0).epsilon(1e-12));

  const auto res = pearson_r(x, {1, 3, 2, 4});
  CHECK(res.r == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(res.df == 2);

  const auto scaled = pearson_r(x, {10.0, 30.0, 20.0, 40.0});
  CHECK(scaled.r == doctest::Approx(res.r).epsilon(1e-12));
  std::vector<double> xs{5, 9, 13, 17};  // 4x+1
  CHECK(pearson_r(xs, {1, 3, 2, 4}).r == doctest::Approx(res.r).epsilon(1e-12));

  CHECK_THROWS_AS(pearson_r({1, 2}, {1, 2}), DegenerateInput);
  CHECK_THROWS_AS(pearson_r({1, 1, 1}, {1, 2, 3}), DegenerateInput);
}

TEST_CASE("student_t_cdf: reference points") {
  CHECK(student_t_cdf(0.0, 5.0) == doctest::Approx(0.5).epsilon(1e-12));
  // t_{0.975, 10} = 2.228...
  CHECK(student_t_cdf(2.228138852, 10.0) == doctest::Approx(0.975).epsilon(1e-6));
  CHECK(student_t_cdf(-2.228138852, 10.0) == doctest::Approx(0.025).epsilon(1e-6));
}

TEST_CASE("quantile_grade: worked examples") {
  std::map<std::string, double> ten;
  for (int i = 1; i <= 10; ++i) ten["m" + std::to_string(i)] = i;
  const auto grades = quantile_grade(ten, true);
  CHECK(grades.at("m10") == Grade::PlusPlus);
  CHECK(grades.at("m1") == Grade::MinusMinus);

  std::map<std::string, double> equal{{"a", 2.0}, {"b", 2.0}, {"c", 2.0}};
  for (const auto& [name, g] : quantile_grade(equal, true)) CHECK(g == Grade::Zero);

  std::map<std::string, double> twenty;
  for (int i = 1; i <= 20; ++i) twenty["m" + std::to_string(i)] = i;
  int plus_plus = 0;
  for (const auto& [name, g] : quantile_grade(twenty, true))
    plus_plus += g == Grade::PlusPlus;
  CHECK(plus_plus == 2);

  // lower-is-better mirrors the grading
  const auto low = quantile_grade(ten, false);
  CHECK(low.at("m1") == Grade::PlusPlus);
  CHECK(low.at("m10") == Grade::MinusMinus);
}
