#pragma once

#include <map>
#include <string>
#include <vector>

#include "filterbench/bench.hpp"
#include "filterbench/metrics.hpp"

namespace filterbench {

enum class SeKind { HC0, HC1 };

struct AnalysisModel {
  std::vector<std::string> terms;
  std::vector<double> coefficients;
  std::vector<double> robust_se;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_statistic = 0.0;
  std::size_t n_obs = 0;
};

// OLS by Householder QR with a heteroskedasticity-robust sandwich covariance
// (X'X)^-1 X' diag(e^2) X (X'X)^-1; HC1 scales by n/(n-q). The design must
// include the intercept column and have full column rank (RankDeficient
// otherwise). R^2 and F are computed about the mean.
AnalysisModel ols_robust(const std::vector<double>& design, std::size_t q,
                         const std::vector<double>& y, SeKind se_kind,
                         std::vector<std::string> terms = {});

enum class ControlVar {
  ClassNoise, AttributeNoise, Classifier, NumRedundantFeatures, MinClassDev,
  RelFeatObs,
};
const char* to_string(ControlVar c);

struct RegressionSpec {
  Criterion outcome = Criterion::PredictiveAuc;
  std::string reference_method = "none";
  std::vector<ControlVar> controls;
  SeKind se_kind = SeKind::HC0;
};

// Dummy-encodes methods against the reference and the requested controls
// (classifier categorical with nb as base; minClassDev is the deviation from
// the 50/50 split times ten; relFeatObs is p/n). Stability is regressed at
// the pooled (scenario, method) level, the other criteria per record.
AnalysisModel fit_criterion_model(const std::vector<RunRecord>& records,
                                  const RegressionSpec& spec);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_one_sided = 0.0;  // P(T_df > t): small when A > B
  double cohens_d = 0.0;     // pooled-sd effect size
};
WelchResult welch_t(const std::vector<double>& group_a, const std::vector<double>& group_b);

struct PearsonResult {
  double r = 0.0;
  int df = 0;
  double p_two_sided = 0.0;
};
PearsonResult pearson_r(const std::vector<double>& x, const std::vector<double>& y);

enum class Grade { PlusPlus, Plus, Zero, Minus, MinusMinus };
const char* to_string(Grade g);

// Position of each method's value against the 10/25/75/90 percent quantiles
// of the value distribution (inclusive linear-interpolation quantiles).
std::map<std::string, Grade> quantile_grade(const std::map<std::string, double>& values,
                                            bool higher_is_better);

// regularized incomplete beta and Student-t CDF, exposed for tests
double incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);

}  // namespace filterbench
