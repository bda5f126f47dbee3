#include "filterbench/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "filterbench/metrics.hpp"

namespace filterbench {

namespace {

constexpr double kLn2 = 0.6931471805599453;

inline double log2_safe(double p) { return std::log(p) / kLn2; }

inline double entropy2(double p0, double p1) {
  double h = 0.0;
  if (p0 > 0.0) h -= p0 * log2_safe(p0);
  if (p1 > 0.0) h -= p1 * log2_safe(p1);
  return h;
}

inline double dkm_g(double q) { return 2.0 * std::sqrt(q * (1.0 - q)); }

// class-by-bin counts of one discretized feature against binary labels;
// only occupied bins are kept
struct BranchCounts {
  std::vector<std::int64_t> c0, c1;  // per occupied bin
  std::int64_t n0 = 0, n1 = 0, n = 0;
  std::size_t branches() const { return c0.size(); }
};

BranchCounts tally(const std::vector<int>& bins, const std::vector<int>& labels, int nbins) {
  std::vector<std::int64_t> c0(nbins, 0), c1(nbins, 0);
  BranchCounts out;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (labels[i] == 0) ++c0[bins[i]];
    else ++c1[bins[i]];
  }
  for (int v = 0; v < nbins; ++v) {
    if (c0[v] + c1[v] > 0) {
      out.c0.push_back(c0[v]);
      out.c1.push_back(c1[v]);
      out.n0 += c0[v];
      out.n1 += c1[v];
    }
  }
  out.n = out.n0 + out.n1;
  return out;
}

// MDL code length of a class-count vector: log2 of the multinomial
// coefficient plus the prior-decoder term
double mdl_code_length(std::int64_t c0, std::int64_t c1) {
  const std::int64_t m = c0 + c1;
  const double multinom =
      (std::lgamma(static_cast<double>(m) + 1.0) - std::lgamma(static_cast<double>(c0) + 1.0) -
       std::lgamma(static_cast<double>(c1) + 1.0)) /
      kLn2;
  // binary classes: choose(m + 1, 1)
  return multinom + log2_safe(static_cast<double>(m) + 1.0);
}

// expected-cost reweighting of a binary class distribution (p0, p1); returns
// the reweighted distribution
void cost_weighted(double p0, double p1, const CostMatrix& cost, double& q0, double& q1) {
  const double e0 = p0 < 1.0 ? p1 * cost(0, 1) / (1.0 - p0) : 0.0;
  const double e1 = p1 < 1.0 ? p0 * cost(1, 0) / (1.0 - p1) : 0.0;
  const double esum = p0 * e0 + p1 * e1;
  if (esum <= 0.0) {
    q0 = q1 = 0.0;
    return;
  }
  q0 = p0 * e0 / esum;
  q1 = p1 * e1 / esum;
}

double split_score(const BranchCounts& t, SplitScoreMethod method) {
  const std::size_t B = t.branches();
  if (B <= 1) return 0.0;  // constant-feature convention
  const double n = static_cast<double>(t.n);
  const double py0 = static_cast<double>(t.n0) / n;
  const double py1 = static_cast<double>(t.n1) / n;

  auto branch_p = [&](std::size_t v, double& pv, double& b0, double& b1) {
    const double av = static_cast<double>(t.c0[v] + t.c1[v]);
    pv = av / n;
    b0 = static_cast<double>(t.c0[v]) / av;
    b1 = static_cast<double>(t.c1[v]) / av;
  };

  switch (method) {
    case SplitScoreMethod::InfGain:
    case SplitScoreMethod::GainRatio:
    case SplitScoreMethod::EqualInf: {
      double cond = 0.0, ha = 0.0;
      for (std::size_t v = 0; v < B; ++v) {
        double pv, b0, b1;
        branch_p(v, pv, b0, b1);
        const double w = method == SplitScoreMethod::EqualInf ? 1.0 / static_cast<double>(B) : pv;
        cond += w * entropy2(b0, b1);
        ha -= pv * log2_safe(pv);
      }
      const double gain = entropy2(py0, py1) - cond;
      if (method == SplitScoreMethod::GainRatio) return ha > 0.0 ? gain / ha : 0.0;
      return gain;
    }
    case SplitScoreMethod::Gini:
    case SplitScoreMethod::EqualGini: {
      double cond = 0.0;
      for (std::size_t v = 0; v < B; ++v) {
        double pv, b0, b1;
        branch_p(v, pv, b0, b1);
        const double w = method == SplitScoreMethod::EqualGini ? 1.0 / static_cast<double>(B) : pv;
        cond += w * (1.0 - b0 * b0 - b1 * b1);
      }
      return (1.0 - py0 * py0 - py1 * py1) - cond;
    }
    case SplitScoreMethod::DKM:
    case SplitScoreMethod::EqualDKM: {
      double cond = 0.0;
      for (std::size_t v = 0; v < B; ++v) {
        double pv, b0, b1;
        branch_p(v, pv, b0, b1);
        const double w = method == SplitScoreMethod::EqualDKM ? 1.0 / static_cast<double>(B) : pv;
        cond += w * dkm_g(b1);
      }
      return dkm_g(py1) - cond;
    }
    case SplitScoreMethod::Accuracy: {
      double acc = 0.0;
      for (std::size_t v = 0; v < B; ++v) {
        double pv, b0, b1;
        branch_p(v, pv, b0, b1);
        acc += pv * std::max(b0, b1);
      }
      return acc - std::max(py0, py1);
    }
    case SplitScoreMethod::MDL: {
      double branch_len = 0.0;
      for (std::size_t v = 0; v < B; ++v) branch_len += mdl_code_length(t.c0[v], t.c1[v]);
      return (mdl_code_length(t.n0, t.n1) - branch_len) / n;
    }
    case SplitScoreMethod::MyopicReliefF: {
      const double prior = py0 * py0 + py1 * py1;
      double p_eq_a = 0.0, gini_post = 0.0;
      for (std::size_t v = 0; v < B; ++v) {
        double pv, b0, b1;
        branch_p(v, pv, b0, b1);
        p_eq_a += pv * pv;
        gini_post += pv * pv * (b0 * b0 + b1 * b1);
      }
      gini_post = gini_post / p_eq_a - prior;
      return p_eq_a / (prior * (1.0 - prior)) * gini_post;
    }
    case SplitScoreMethod::ImpurityEuclid:
    case SplitScoreMethod::ImpurityHellinger: {
      double h = 0.0;
      for (std::size_t v = 0; v < B; ++v) {
        double pv, b0, b1;
        branch_p(v, pv, b0, b1);
        if (method == SplitScoreMethod::ImpurityEuclid) {
          const double d = b0 - b1;
          h += d * d;
        } else {
          const double d = std::sqrt(b0) - std::sqrt(b1);
          h += d * d;
        }
      }
      return std::sqrt(h);
    }
    case SplitScoreMethod::EqualHellinger: {
      // average Hellinger distance between the class distributions of every
      // pair of branches
      double h = 0.0;
      std::size_t pairs = 0;
      for (std::size_t v = 0; v < B; ++v) {
        double pv, v0, v1;
        branch_p(v, pv, v0, v1);
        for (std::size_t w = v + 1; w < B; ++w) {
          double pw, w0, w1;
          branch_p(w, pw, w0, w1);
          const double d0 = std::sqrt(v0) - std::sqrt(w0);
          const double d1 = std::sqrt(v1) - std::sqrt(w1);
          h += std::sqrt(d0 * d0 + d1 * d1);
          ++pairs;
        }
      }
      return pairs > 0 ? h / static_cast<double>(pairs) : 0.0;
    }
    case SplitScoreMethod::DistHellinger:
    case SplitScoreMethod::DistEuclid:
    case SplitScoreMethod::DistAngle: {
      // distance between the two class-conditional bin distributions
      std::vector<double> q0(B), q1(B);
      for (std::size_t v = 0; v < B; ++v) {
        q0[v] = static_cast<double>(t.c0[v]) / static_cast<double>(t.n0);
        q1[v] = static_cast<double>(t.c1[v]) / static_cast<double>(t.n1);
      }
      if (method == SplitScoreMethod::DistAngle) {
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t v = 0; v < B; ++v) {
          s0 += q0[v] * q0[v];
          s1 += q1[v] * q1[v];
        }
        s0 = std::sqrt(s0);
        s1 = std::sqrt(s1);
        for (std::size_t v = 0; v < B; ++v) {
          q0[v] /= s0;
          q1[v] /= s1;
        }
      }
      double d = 0.0;
      for (std::size_t v = 0; v < B; ++v) {
        const double dv = method == SplitScoreMethod::DistHellinger
                              ? std::sqrt(q1[v]) - std::sqrt(q0[v])
                              : q1[v] - q0[v];
        d += dv * dv;
      }
      return method == SplitScoreMethod::DistHellinger ? std::sqrt(d) : std::sqrt(d / 2.0);
    }
    case SplitScoreMethod::DistAUC: {
      double d = 0.0;
      for (std::size_t u = 0; u < B; ++u)
        for (std::size_t v = u + 1; v < B; ++v) {
          const double pu0 = static_cast<double>(t.c0[u]) / static_cast<double>(t.n0);
          const double pv0 = static_cast<double>(t.c0[v]) / static_cast<double>(t.n0);
          const double pu1 = static_cast<double>(t.c1[u]) / static_cast<double>(t.n1);
          const double pv1 = static_cast<double>(t.c1[v]) / static_cast<double>(t.n1);
          d += std::fabs(pu0 * pv1 - pv0 * pu1);
        }
      return d;
    }
    case SplitScoreMethod::UniformInf:
    case SplitScoreMethod::UniformGini:
    case SplitScoreMethod::UniformDKM:
    case SplitScoreMethod::UniformAccuracy: {
      // replace the class prior by the uniform prior: per branch, class
      // likelihoods P(v|c) renormalized
      double gain = 0.0;
      for (std::size_t v = 0; v < B; ++v) {
        const double l0 = static_cast<double>(t.c0[v]) / static_cast<double>(t.n0);
        const double l1 = static_cast<double>(t.c1[v]) / static_cast<double>(t.n1);
        const double pvj = l0 + l1;
        if (pvj <= 0.0) continue;
        const double d0 = l0 / pvj, d1 = l1 / pvj;
        const double pu = pvj / 2.0;
        switch (method) {
          case SplitScoreMethod::UniformInf: gain += pu * entropy2(d0, d1); break;
          case SplitScoreMethod::UniformGini: gain += pu * (1.0 - d0 * d0 - d1 * d1); break;
          case SplitScoreMethod::UniformDKM: gain += pu * dkm_g(d1); break;
          default: gain += pu * std::max(d0, d1); break;
        }
      }
      return method == SplitScoreMethod::UniformAccuracy ? gain : 1.0 - gain;
    }
  }
  return 0.0;
}

double cost_split_score(const BranchCounts& t, CostScoreMethod method, const CostMatrix& cost) {
  const std::size_t B = t.branches();
  if (B <= 1) return 0.0;
  const double n = static_cast<double>(t.n);

  auto cost_impurity = [&](std::int64_t c0, std::int64_t c1, bool as_entropy) {
    const double m = static_cast<double>(c0 + c1);
    const double p0 = static_cast<double>(c0) / m;
    const double p1 = static_cast<double>(c1) / m;
    double q0, q1;
    cost_weighted(p0, p1, cost, q0, q1);
    if (as_entropy) {
      double h = 0.0;
      if (q0 > 0.0 && p0 < 1.0) h -= q0 * log2_safe(q0);
      if (q1 > 0.0 && p1 < 1.0) h -= q1 * log2_safe(q1);
      return h;
    }
    return dkm_g(std::max(q0, q1));
  };

  if (method == CostScoreMethod::DKMcost || method == CostScoreMethod::GainRatioCost) {
    const bool entropy_kind = method == CostScoreMethod::GainRatioCost;
    const double prior = cost_impurity(t.n0, t.n1, entropy_kind);
    double cond = 0.0, ha = 0.0;
    for (std::size_t v = 0; v < B; ++v) {
      const double av = static_cast<double>(t.c0[v] + t.c1[v]);
      const double pv = av / n;
      cond += pv * cost_impurity(t.c0[v], t.c1[v], entropy_kind);
      ha -= pv * log2_safe(pv);
    }
    const double gain = prior - cond;
    if (method == CostScoreMethod::GainRatioCost) return ha > 0.0 ? gain / ha : 0.0;
    return gain;
  }
  return 0.0;  // MDLsmp handled at the sampling level
}

std::vector<std::size_t> cost_stratified_sample(const std::vector<int>& labels,
                                                const CostMatrix& cost, Rng& rng) {
  const std::size_t n = labels.size();
  std::vector<std::size_t> members[2];
  for (std::size_t i = 0; i < n; ++i) members[labels[i]].push_back(i);
  const double p0 = static_cast<double>(members[0].size()) / static_cast<double>(n);
  const double p1 = 1.0 - p0;
  const double e0 = p0 < 1.0 ? p1 * cost(0, 1) / (1.0 - p0) : 0.0;
  const double e1 = p1 < 1.0 ? p0 * cost(1, 0) / (1.0 - p1) : 0.0;
  const double esum = p0 * e0 + p1 * e1;
  double q0 = esum > 0.0 ? p0 * e0 / esum : p0;

  std::vector<std::size_t> sample;
  sample.reserve(n);
  const std::size_t take0 = static_cast<std::size_t>(std::lround(q0 * static_cast<double>(n)));
  const std::size_t takes[2] = {take0, n - take0};
  for (int cls = 0; cls < 2; ++cls) {
    auto& pool = members[cls];
    if (pool.empty()) continue;
    const std::size_t whole = takes[cls] / pool.size();
    for (std::size_t r = 0; r < whole; ++r)
      sample.insert(sample.end(), pool.begin(), pool.end());
    std::size_t rest = takes[cls] - whole * pool.size();
    std::vector<std::size_t> shuffled = pool;
    rng.shuffle(shuffled);
    sample.insert(sample.end(), shuffled.begin(), shuffled.begin() + rest);
  }
  return sample;
}

}  // namespace

const char* to_string(SplitScoreMethod m) {
  switch (m) {
    case SplitScoreMethod::Accuracy: return "accuracy";
    case SplitScoreMethod::DistAngle: return "dist_angle";
    case SplitScoreMethod::DistAUC: return "dist_auc";
    case SplitScoreMethod::DistEuclid: return "dist_euclid";
    case SplitScoreMethod::DistHellinger: return "dist_hellinger";
    case SplitScoreMethod::DKM: return "dkm";
    case SplitScoreMethod::EqualDKM: return "equal_dkm";
    case SplitScoreMethod::EqualGini: return "equal_gini";
    case SplitScoreMethod::EqualHellinger: return "equal_hellinger";
    case SplitScoreMethod::EqualInf: return "equal_inf";
    case SplitScoreMethod::GainRatio: return "gain_ratio";
    case SplitScoreMethod::Gini: return "gini";
    case SplitScoreMethod::ImpurityEuclid: return "impurity_euclid";
    case SplitScoreMethod::ImpurityHellinger: return "impurity_hellinger";
    case SplitScoreMethod::InfGain: return "inf_gain";
    case SplitScoreMethod::MDL: return "mdl";
    case SplitScoreMethod::MyopicReliefF: return "myopic_relieff";
    case SplitScoreMethod::UniformAccuracy: return "uniform_accuracy";
    case SplitScoreMethod::UniformDKM: return "uniform_dkm";
    case SplitScoreMethod::UniformGini: return "uniform_gini";
    case SplitScoreMethod::UniformInf: return "uniform_inf";
  }
  return "?";
}

const char* to_string(StatScoreMethod m) {
  switch (m) {
    case StatScoreMethod::ChiSquared: return "chi_squared";
    case StatScoreMethod::AnovaF: return "anova";
    case StatScoreMethod::KruskalWallis: return "kruskal_wallis";
    case StatScoreMethod::PerFeatureAuc: return "per_feature_auc";
    case StatScoreMethod::SymmetricalUncertainty: return "symmetrical_uncertainty";
    case StatScoreMethod::OneR: return "one_r";
    case StatScoreMethod::GainRatioAlt: return "gain_ratio_alt";
  }
  return "?";
}

const char* to_string(CostScoreMethod m) {
  switch (m) {
    case CostScoreMethod::DKMcost: return "dkm_cost";
    case CostScoreMethod::GainRatioCost: return "gain_ratio_cost";
    case CostScoreMethod::MDLsmp: return "mdl_smp";
  }
  return "?";
}

FeatureWeights score_split(const Dataset& ds, SplitScoreMethod method,
                           const DiscretizationSpec& disc) {
  const std::size_t p = ds.cols();
  FeatureWeights out{to_string(method), std::vector<double>(p, 0.0), true};
  for (std::size_t j = 0; j < p; ++j) {
    const auto col = ds.column(j);
    const auto bins = discretize(col, disc);
    out.weights[j] = split_score(tally(bins, ds.labels(), disc.bins), method);
  }
  return out;
}

FeatureWeights score_stat(const Dataset& ds, StatScoreMethod method,
                          const DiscretizationSpec& disc, const DiscretizationSpec& alt_disc) {
  const std::size_t p = ds.cols();
  const std::size_t n = ds.rows();
  const auto& y = ds.labels();
  FeatureWeights out{to_string(method), std::vector<double>(p, 0.0), true};

  for (std::size_t j = 0; j < p; ++j) {
    const auto col = ds.column(j);
    double w = 0.0;
    switch (method) {
      case StatScoreMethod::ChiSquared: {
        const auto t = tally(discretize(col, disc), y, disc.bins);
        if (t.branches() <= 1) break;
        const double dn = static_cast<double>(t.n);
        for (std::size_t v = 0; v < t.branches(); ++v) {
          const double av = static_cast<double>(t.c0[v] + t.c1[v]);
          for (int c = 0; c < 2; ++c) {
            const double observed = static_cast<double>(c == 0 ? t.c0[v] : t.c1[v]);
            const double expected =
                av * static_cast<double>(c == 0 ? t.n0 : t.n1) / dn;
            if (expected > 0.0) w += (observed - expected) * (observed - expected) / expected;
          }
        }
        break;
      }
      case StatScoreMethod::AnovaF: {
        double sum[2] = {0, 0}, cnt[2] = {0, 0};
        for (std::size_t i = 0; i < n; ++i) {
          sum[y[i]] += col[i];
          cnt[y[i]] += 1.0;
        }
        const double m0 = sum[0] / cnt[0], m1 = sum[1] / cnt[1];
        const double grand = (sum[0] + sum[1]) / static_cast<double>(n);
        double ssw = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = col[i] - (y[i] == 0 ? m0 : m1);
          ssw += d * d;
        }
        const double ssb =
            cnt[0] * (m0 - grand) * (m0 - grand) + cnt[1] * (m1 - grand) * (m1 - grand);
        if (ssb == 0.0) break;  // includes constant features
        if (ssw == 0.0) {
          w = std::numeric_limits<double>::max();
          break;
        }
        w = ssb / (ssw / static_cast<double>(n - 2));
        break;
      }
      case StatScoreMethod::KruskalWallis: {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
        std::vector<double> rank(n);
        double tie_term = 0.0;
        std::size_t i = 0;
        while (i < n) {
          std::size_t k = i;
          while (k < n && col[order[k]] == col[order[i]]) ++k;
          const double r = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(k));
          for (std::size_t q = i; q < k; ++q) rank[order[q]] = r;
          const double tcount = static_cast<double>(k - i);
          tie_term += tcount * tcount * tcount - tcount;
          i = k;
        }
        double rsum[2] = {0, 0}, cnt[2] = {0, 0};
        for (std::size_t q = 0; q < n; ++q) {
          rsum[y[q]] += rank[q];
          cnt[y[q]] += 1.0;
        }
        const double dn = static_cast<double>(n);
        double h = 12.0 / (dn * (dn + 1.0)) *
                       (rsum[0] * rsum[0] / cnt[0] + rsum[1] * rsum[1] / cnt[1]) -
                   3.0 * (dn + 1.0);
        const double correction = 1.0 - tie_term / (dn * dn * dn - dn);
        w = correction > 0.0 ? h / correction : 0.0;
        break;
      }
      case StatScoreMethod::PerFeatureAuc: {
        const double a = auc(col, y);
        w = std::max(a, 1.0 - a);
        break;
      }
      case StatScoreMethod::SymmetricalUncertainty: {
        const auto bins = discretize(col, disc);
        const auto t = ContingencyTable::cross(bins, y, disc.bins, 2);
        const double hx = entropy(t, 0), hy = entropy(t, 1);
        if (hx + hy > 0.0) w = 2.0 * mutual_information(t) / (hx + hy);
        break;
      }
      case StatScoreMethod::OneR: {
        const auto t = tally(discretize(col, disc), y, disc.bins);
        double correct = 0.0;
        for (std::size_t v = 0; v < t.branches(); ++v)
          correct += static_cast<double>(std::max(t.c0[v], t.c1[v]));
        w = correct / static_cast<double>(t.n);
        break;
      }
      case StatScoreMethod::GainRatioAlt: {
        const auto t = tally(discretize(col, alt_disc), y, alt_disc.bins);
        w = split_score(t, SplitScoreMethod::GainRatio);
        break;
      }
    }
    out.weights[j] = w;
  }
  return out;
}

FeatureWeights score_cost_sensitive(const Dataset& ds, CostScoreMethod method,
                                    const CostMatrix& cost, const DiscretizationSpec& disc,
                                    Rng& rng) {
  cost.validate();
  const std::size_t p = ds.cols();
  FeatureWeights out{to_string(method), std::vector<double>(p, 0.0), true};

  if (method == CostScoreMethod::MDLsmp) {
    const auto sample = cost_stratified_sample(ds.labels(), cost, rng);
    const Dataset resampled = ds.subset_rows(sample);
    for (std::size_t j = 0; j < p; ++j) {
      const auto col = resampled.column(j);
      const auto t = tally(discretize(col, disc), resampled.labels(), disc.bins);
      out.weights[j] = split_score(t, SplitScoreMethod::MDL);
    }
    return out;
  }

  for (std::size_t j = 0; j < p; ++j) {
    const auto col = ds.column(j);
    const auto t = tally(discretize(col, disc), ds.labels(), disc.bins);
    out.weights[j] = cost_split_score(t, method, cost);
  }
  return out;
}

FeatureSet select_top_k(const FeatureWeights& w, std::size_t k) {
  const std::size_t p = w.weights.size();
  if (k < 1 || k > p) throw KOutOfRange("select_top_k: k outside [1, p]");
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (w.weights[a] != w.weights[b])
      return w.higher_is_better ? w.weights[a] > w.weights[b] : w.weights[a] < w.weights[b];
    return a < b;
  });
  FeatureSet out;
  out.indices.assign(order.begin(), order.begin() + k);
  for (auto i : out.indices) out.scores.push_back(w.weights[i]);
  return out;
}

}  // namespace filterbench
