#include "filterbench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "filterbench/datagen.hpp"
#include "filterbench/kernels.hpp"

namespace filterbench {

AnalysisModel ols_robust(const std::vector<double>& design, std::size_t q,
                         const std::vector<double>& y, SeKind se_kind,
                         std::vector<std::string> terms) {
  const std::size_t n = y.size();
  if (q == 0 || n * q != design.size())
    throw Error("ols_robust: design shape mismatch");
  if (n <= q) throw RankDeficient("ols_robust: need n > q");

  // normal-equations-free solve via Householder QR
  std::vector<double> a = design;
  std::vector<double> qty = y;
  std::vector<double> vstore;  // Householder vectors, column-major segments
  std::vector<std::size_t> voff(q, 0);
  std::vector<double> beta_h(q, 0.0);

  for (std::size_t k = 0; k < q; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += a[i * q + k] * a[i * q + k];
    norm = std::sqrt(norm);
    const double akk = a[k * q + k];
    const double alpha = akk > 0.0 ? -norm : norm;
    const double v0 = akk - alpha;
    double vnorm = v0 * v0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += a[i * q + k] * a[i * q + k];
    voff[k] = vstore.size();
    vstore.push_back(v0);
    for (std::size_t i = k + 1; i < n; ++i) vstore.push_back(a[i * q + k]);
    if (vnorm == 0.0) {
      beta_h[k] = 0.0;
      continue;
    }
    beta_h[k] = 2.0 / vnorm;
    a[k * q + k] = alpha;
    for (std::size_t i = k + 1; i < n; ++i) a[i * q + k] = 0.0;
    const double* v = &vstore[voff[k]];
    for (std::size_t j = k + 1; j < q; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += v[i - k] * a[i * q + j];
      const double scale = beta_h[k] * dot;
      for (std::size_t i = k; i < n; ++i) a[i * q + j] -= scale * v[i - k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < n; ++i) dot += v[i - k] * qty[i];
    const double scale = beta_h[k] * dot;
    for (std::size_t i = k; i < n; ++i) qty[i] -= scale * v[i - k];
  }

  // rank check on the R diagonal
  double rmax = 0.0;
  for (std::size_t k = 0; k < q; ++k) rmax = std::max(rmax, std::fabs(a[k * q + k]));
  for (std::size_t k = 0; k < q; ++k)
    if (std::fabs(a[k * q + k]) < 1e-10 * std::max(rmax, 1.0))
      throw RankDeficient("ols_robust: design is rank deficient");

  // back substitution: R coef = Q'y (first q rows)
  std::vector<double> coef(q, 0.0);
  for (std::size_t k = q; k-- > 0;) {
    double s = qty[k];
    for (std::size_t j = k + 1; j < q; ++j) s -= a[k * q + j] * coef[j];
    coef[k] = s / a[k * q + k];
  }

  // residuals and fit statistics
  std::vector<double> resid(n);
  double sse = 0.0, mean_y = kernels::active().sum(y.data(), n) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < q; ++j) fit += design[i * q + j] * coef[j];
    resid[i] = y[i] - fit;
    sse += resid[i] * resid[i];
  }
  double sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) sst += (y[i] - mean_y) * (y[i] - mean_y);

  // bread: (X'X)^-1 = R^-1 R^-T
  std::vector<double> rinv(q * q, 0.0);
  for (std::size_t c = 0; c < q; ++c) {
    rinv[c * q + c] = 1.0 / a[c * q + c];
    for (std::size_t k = c; k-- > 0;) {
      double s = 0.0;
      for (std::size_t j = k + 1; j <= c; ++j) s += a[k * q + j] * rinv[j * q + c];
      rinv[k * q + c] = -s / a[k * q + k];
    }
  }
  std::vector<double> bread(q * q, 0.0);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      double s = 0.0;
      for (std::size_t k = std::max(i, j); k < q; ++k)
        s += rinv[i * q + k] * rinv[j * q + k];
      bread[i * q + j] = s;
    }

  // meat: sum_i e_i^2 x_i x_i'
  std::vector<double> meat(q * q, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = resid[i] * resid[i];
    const double* x = &design[i * q];
    for (std::size_t r = 0; r < q; ++r)
      for (std::size_t c = r; c < q; ++c) meat[r * q + c] += e2 * x[r] * x[c];
  }
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < r; ++c) meat[r * q + c] = meat[c * q + r];

  std::vector<double> tmp(q * q, 0.0), cov(q * q, 0.0);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < q; ++k) s += bread[i * q + k] * meat[k * q + j];
      tmp[i * q + j] = s;
    }
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < q; ++k) s += tmp[i * q + k] * bread[k * q + j];
      cov[i * q + j] = s;
    }
  const double hc_scale =
      se_kind == SeKind::HC1
          ? static_cast<double>(n) / static_cast<double>(n - q)
          : 1.0;

  AnalysisModel model;
  model.terms = terms.empty() ? [&] {
    std::vector<std::string> t(q);
    for (std::size_t j = 0; j < q; ++j) t[j] = "x" + std::to_string(j);
    return t;
  }()
                              : std::move(terms);
  model.coefficients = coef;
  model.robust_se.resize(q);
  for (std::size_t j = 0; j < q; ++j)
    model.robust_se[j] = std::sqrt(hc_scale * cov[j * q + j]);
  model.n_obs = n;
  model.r_squared = sst > 0.0 ? 1.0 - sse / sst : 0.0;
  model.adj_r_squared =
      sst > 0.0 ? 1.0 - (sse / static_cast<double>(n - q)) /
                            (sst / static_cast<double>(n - 1))
                : 0.0;
  model.f_statistic =
      q > 1 && sse > 0.0
          ? ((sst - sse) / static_cast<double>(q - 1)) / (sse / static_cast<double>(n - q))
          : 0.0;
  return model;
}

const char* to_string(ControlVar c) {
  switch (c) {
    case ControlVar::ClassNoise: return "classnoise";
    case ControlVar::AttributeNoise: return "attributenoise";
    case ControlVar::Classifier: return "classifier";
    case ControlVar::NumRedundantFeatures: return "num_redundant_features";
    case ControlVar::MinClassDev: return "minClassDev";
    case ControlVar::RelFeatObs: return "relFeatObs";
  }
  return "?";
}

namespace {

double control_value(ControlVar c, const ScenarioSpec& spec, const std::string& classifier) {
  switch (c) {
    case ControlVar::ClassNoise: return spec.class_noise;
    case ControlVar::AttributeNoise: return spec.attribute_noise;
    case ControlVar::Classifier: return classifier == "forest" ? 1.0 : 0.0;
    case ControlVar::NumRedundantFeatures:
      return static_cast<double>(spec.features_redundant);
    case ControlVar::MinClassDev: return 10.0 * (0.5 - spec.minority_fraction);
    case ControlVar::RelFeatObs:
      return static_cast<double>(spec.features_total) /
             static_cast<double>(spec.observations);
  }
  return 0.0;
}

}  // namespace

AnalysisModel fit_criterion_model(const std::vector<RunRecord>& records,
                                  const RegressionSpec& spec) {
  struct Row {
    std::string method;
    std::string scenario;
    std::string classifier;
    double y;
  };
  std::vector<Row> rows;

  if (spec.outcome == Criterion::Stability) {
    std::set<std::string> classifiers;
    for (const auto& r : records) classifiers.insert(r.classifier);
    const std::vector<std::string> clfs(classifiers.begin(), classifiers.end());
    for (const auto& s : pooled_stability(records, clfs))
      if (s.defined) rows.push_back({s.method, s.scenario, "", s.value});
  } else {
    for (const auto& r : records) {
      double y = 0.0;
      switch (spec.outcome) {
        case Criterion::PredictiveAuc: y = r.auc; break;
        case Criterion::RelevantFraction: y = r.relevant_fraction; break;
        case Criterion::Runtime: y = r.runtime_seconds; break;
        default: break;
      }
      rows.push_back({r.method, r.scenario, r.classifier, y});
    }
  }
  if (rows.empty()) throw Error("fit_criterion_model: no usable records");

  bool has_reference = false;
  std::set<std::string> methods;
  for (const auto& r : rows) {
    if (r.method == spec.reference_method) has_reference = true;
    else methods.insert(r.method);
  }
  if (!has_reference)
    throw MissingReference("fit_criterion_model: reference method '" +
                           spec.reference_method + "' absent from records");

  std::vector<ControlVar> controls = spec.controls;
  if (spec.outcome == Criterion::Stability)
    std::erase(controls, ControlVar::Classifier);  // no classifier axis pooled

  const std::vector<std::string> method_list(methods.begin(), methods.end());
  const std::size_t q = 1 + method_list.size() + controls.size();

  std::vector<std::string> terms;
  terms.push_back("(Intercept)");
  for (const auto& m : method_list) terms.push_back("method:" + m);
  for (auto c : controls)
    terms.push_back(c == ControlVar::Classifier ? "classifier:forest" : to_string(c));

  std::vector<double> design(rows.size() * q, 0.0);
  std::vector<double> y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    double* x = &design[i * q];
    x[0] = 1.0;
    for (std::size_t m = 0; m < method_list.size(); ++m)
      x[1 + m] = row.method == method_list[m] ? 1.0 : 0.0;
    const ScenarioSpec& scen = scenario_by_name(row.scenario);
    for (std::size_t c = 0; c < controls.size(); ++c)
      x[1 + method_list.size() + c] = control_value(controls[c], scen, row.classifier);
    y[i] = row.y;
  }
  return ols_robust(design, q, y, spec.se_kind, std::move(terms));
}

namespace {

double betacf(double a, double b, double x) {
  // Lentz's continued fraction for the incomplete beta
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14, kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  const double x = df / (df + t * t);
  const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - tail : tail;
}

WelchResult welch_t(const std::vector<double>& group_a, const std::vector<double>& group_b) {
  const std::size_t na = group_a.size(), nb = group_b.size();
  if (na < 2 || nb < 2) throw DegenerateGroup("welch_t: each group needs >= 2 values");
  auto mean_var = [](const std::vector<double>& v) {
    const double m = kernels::active().sum(v.data(), v.size()) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::make_pair(m, ss / static_cast<double>(v.size() - 1));
  };
  const auto [ma, va] = mean_var(group_a);
  const auto [mb, vb] = mean_var(group_b);
  if (va <= 0.0 && vb <= 0.0)
    throw DegenerateGroup("welch_t: both groups have zero variance");

  const double sa = va / static_cast<double>(na), sb = vb / static_cast<double>(nb);
  WelchResult res;
  res.t = (ma - mb) / std::sqrt(sa + sb);
  res.df = (sa + sb) * (sa + sb) /
           (sa * sa / static_cast<double>(na - 1) + sb * sb / static_cast<double>(nb - 1));
  res.p_one_sided = 1.0 - student_t_cdf(res.t, res.df);
  const double pooled =
      std::sqrt(((static_cast<double>(na - 1)) * va + (static_cast<double>(nb - 1)) * vb) /
                static_cast<double>(na + nb - 2));
  res.cohens_d = pooled > 0.0 ? (ma - mb) / pooled : 0.0;
  return res;
}

PearsonResult pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) throw DegenerateInput("pearson_r: need n >= 3 equal lengths");
  const double mx = kernels::active().sum(x.data(), n) / static_cast<double>(n);
  const double my = kernels::active().sum(y.data(), n) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0)
    throw DegenerateInput("pearson_r: zero variance input");
  PearsonResult res;
  res.r = sxy / std::sqrt(sxx * syy);
  res.df = static_cast<int>(n) - 2;
  const double r2 = std::min(res.r * res.r, 1.0 - 1e-15);
  const double t = res.r * std::sqrt(static_cast<double>(res.df) / (1.0 - r2));
  res.p_two_sided = 2.0 * (1.0 - student_t_cdf(std::fabs(t), res.df));
  return res;
}

const char* to_string(Grade g) {
  switch (g) {
    case Grade::PlusPlus: return "++";
    case Grade::Plus: return "+";
    case Grade::Zero: return "0";
    case Grade::Minus: return "-";
    case Grade::MinusMinus: return "--";
  }
  return "?";
}

namespace {

double quantile_type7(std::vector<double> sorted, double p) {
  const std::size_t n = sorted.size();
  const double h = (static_cast<double>(n) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::map<std::string, Grade> quantile_grade(const std::map<std::string, double>& values,
                                            bool higher_is_better) {
  if (values.size() < 2) throw Error("quantile_grade: need >= 2 methods");
  std::vector<double> v;
  v.reserve(values.size());
  for (const auto& [name, x] : values) v.push_back(x);
  std::sort(v.begin(), v.end());
  const double q10 = quantile_type7(v, 0.10), q25 = quantile_type7(v, 0.25);
  const double q75 = quantile_type7(v, 0.75), q90 = quantile_type7(v, 0.90);

  std::map<std::string, Grade> out;
  for (const auto& [name, x] : values) {
    Grade g = Grade::Zero;
    const double hi1 = higher_is_better ? q90 : q10, hi2 = higher_is_better ? q75 : q25;
    const double lo1 = higher_is_better ? q10 : q90, lo2 = higher_is_better ? q25 : q75;
    auto beats = [&](double a, double b) { return higher_is_better ? a > b : a < b; };
    if (beats(x, hi1)) g = Grade::PlusPlus;
    else if (beats(x, hi2)) g = Grade::Plus;
    else if (beats(lo1, x)) g = Grade::MinusMinus;
    else if (beats(lo2, x)) g = Grade::Minus;
    out.emplace(name, g);
  }
  return out;
}

}  // namespace filterbench
