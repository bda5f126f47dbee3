#include "filterbench/multivariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace filterbench {

const char* to_string(MiCriterion c) {
  switch (c) {
    case MiCriterion::MIM: return "mim";
    case MiCriterion::JMI: return "jmi";
    case MiCriterion::JMIM: return "jmim";
    case MiCriterion::NJMIM: return "njmim";
    case MiCriterion::DISR: return "disr";
    case MiCriterion::CMIM: return "cmim";
    case MiCriterion::MRMR: return "mrmr";
    case MiCriterion::JIM: return "jim";
  }
  return "?";
}

namespace {

struct DiscretizedView {
  std::vector<std::vector<int>> bins;  // per feature
  std::vector<int> labels;
  int nbins;
};

DiscretizedView discretize_all(const Dataset& ds, const DiscretizationSpec& disc) {
  DiscretizedView view;
  view.nbins = disc.bins;
  view.labels = ds.labels();
  view.bins.reserve(ds.cols());
  for (std::size_t j = 0; j < ds.cols(); ++j)
    view.bins.push_back(discretize(ds.column(j), disc));
  return view;
}

double feature_label_mi(const DiscretizedView& v, std::size_t j) {
  return mutual_information(ContingencyTable::cross(v.bins[j], v.labels, v.nbins, 2));
}

double gini_of(double p1) { return 2.0 * p1 * (1.0 - p1); }

// gain of the joint variable (Xa, Xb) against the label under Gini impurity
double joint_gini_gain(const DiscretizedView& v, std::size_t a, std::size_t b) {
  const auto t = ContingencyTable::cross3(v.bins[a], v.bins[b], v.labels,
                                          v.nbins, v.nbins, 2);
  const double n = static_cast<double>(t.total());
  std::int64_t y1 = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.nbins); ++i)
    for (std::size_t k = 0; k < static_cast<std::size_t>(v.nbins); ++k) y1 += t.at(i, k, 1);
  double cond = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(v.nbins); ++i)
    for (std::size_t k = 0; k < static_cast<std::size_t>(v.nbins); ++k) {
      const double c0 = static_cast<double>(t.at(i, k, 0));
      const double c1 = static_cast<double>(t.at(i, k, 1));
      const double m = c0 + c1;
      if (m > 0.0) cond += (m / n) * gini_of(c1 / m);
    }
  return gini_of(static_cast<double>(y1) / n) - cond;
}

// statistic of candidate j against the already-selected feature s
double pair_value(const DiscretizedView& v, MiCriterion c, std::size_t j, std::size_t s) {
  switch (c) {
    case MiCriterion::MRMR:
      return mutual_information(
          ContingencyTable::cross(v.bins[j], v.bins[s], v.nbins, v.nbins));
    case MiCriterion::JIM:
      return joint_gini_gain(v, j, s);
    default: {
      const auto t = ContingencyTable::cross3(v.bins[j], v.bins[s], v.labels,
                                              v.nbins, v.nbins, 2);
      switch (c) {
        case MiCriterion::JMI:
        case MiCriterion::JMIM:
          return joint_mi(t);
        case MiCriterion::DISR:
        case MiCriterion::NJMIM: {
          const double h = joint_entropy(t);
          return h > 0.0 ? joint_mi(t) / h : 0.0;
        }
        case MiCriterion::CMIM:
          return conditional_mi(t);
        default:
          return 0.0;
      }
    }
  }
}

bool uses_min(MiCriterion c) {
  return c == MiCriterion::JMIM || c == MiCriterion::NJMIM || c == MiCriterion::CMIM;
}

}  // namespace

FeatureSet greedy_mi_select(const Dataset& ds, MiCriterion criterion, std::size_t k,
                            const DiscretizationSpec& disc) {
  ds.validate();
  const std::size_t p = ds.cols();
  if (k < 1 || k > p) throw KOutOfRange("greedy_mi_select: k outside [1, p]");
  const auto view = discretize_all(ds, disc);

  std::vector<double> relevance(p);
  for (std::size_t j = 0; j < p; ++j) relevance[j] = feature_label_mi(view, j);

  std::vector<char> selected(p, 0);
  // running aggregate of pair statistics per candidate
  std::vector<double> agg(p, uses_min(criterion)
                                 ? std::numeric_limits<double>::max()
                                 : 0.0);
  FeatureSet out;

  for (std::size_t step = 0; step < k; ++step) {
    double best = -std::numeric_limits<double>::max();
    std::size_t best_j = p;
    for (std::size_t j = 0; j < p; ++j) {
      if (selected[j]) continue;
      double score;
      if (step == 0 || criterion == MiCriterion::MIM) {
        score = relevance[j];
      } else {
        switch (criterion) {
          case MiCriterion::JMI:
          case MiCriterion::DISR:
          case MiCriterion::JIM:
            score = agg[j];
            break;
          case MiCriterion::JMIM:
          case MiCriterion::NJMIM:
          case MiCriterion::CMIM:
            score = agg[j];
            break;
          case MiCriterion::MRMR:
            score = relevance[j] - agg[j] / static_cast<double>(step);
            break;
          default:
            score = relevance[j];
        }
      }
      if (score > best) {
        best = score;
        best_j = j;
      }
    }
    selected[best_j] = 1;
    out.indices.push_back(best_j);
    out.scores.push_back(best);

    if (step + 1 == k || criterion == MiCriterion::MIM) continue;
    for (std::size_t j = 0; j < p; ++j) {
      if (selected[j]) continue;
      const double v = pair_value(view, criterion, j, best_j);
      if (uses_min(criterion)) agg[j] = std::min(agg[j], v);
      else agg[j] += v;
    }
  }
  return out;
}

namespace {

// best-first forward search shared by CFS and the consistency filter
class SubsetSearch {
 public:
  explicit SubsetSearch(std::size_t p) : p_(p) {}

  struct Node {
    std::vector<std::size_t> subset;  // sorted
    double merit;
    std::vector<std::size_t> order;   // features in adding order
    std::vector<double> path_merits;
    std::size_t ticket = 0;           // insertion order
  };

  template <typename MeritFn, typename StopFn>
  Node run(MeritFn&& merit_of, StopFn&& good_enough, int max_stale = 5) {
    // merit first; ties prefer smaller subsets, then first-generated
    auto cmp = [](const Node& a, const Node& b) {
      if (a.merit != b.merit) return a.merit < b.merit;
      if (a.subset.size() != b.subset.size()) return a.subset.size() > b.subset.size();
      return a.ticket > b.ticket;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);
    std::unordered_set<std::string> visited;
    std::size_t next_ticket = 0;

    Node root{{}, merit_of(std::vector<std::size_t>{}), {}, {}, next_ticket++};
    if (good_enough(root)) return root;
    Node best = root;
    open.push(root);
    visited.insert(key(root.subset));

    int stale = 0;
    while (!open.empty() && stale < max_stale) {
      Node node = open.top();
      open.pop();
      bool improved = false;
      for (std::size_t f = 0; f < p_; ++f) {
        if (std::binary_search(node.subset.begin(), node.subset.end(), f)) continue;
        Node child;
        child.subset = node.subset;
        child.subset.insert(
            std::lower_bound(child.subset.begin(), child.subset.end(), f), f);
        const std::string k = key(child.subset);
        if (!visited.insert(k).second) continue;
        child.merit = merit_of(child.subset);
        child.order = node.order;
        child.order.push_back(f);
        child.path_merits = node.path_merits;
        child.path_merits.push_back(child.merit);
        child.ticket = next_ticket++;
        if (good_enough(child)) return child;
        if (child.merit > best.merit + 1e-12) {
          best = child;
          improved = true;
        }
        open.push(std::move(child));
      }
      stale = improved ? 0 : stale + 1;
    }
    return best;
  }

 private:
  static std::string key(const std::vector<std::size_t>& subset) {
    std::string k;
    k.reserve(subset.size() * 4);
    for (auto f : subset) {
      k.push_back(static_cast<char>(f & 0xFF));
      k.push_back(static_cast<char>((f >> 8) & 0xFF));
      k.push_back(static_cast<char>((f >> 16) & 0xFF));
      k.push_back(';');
    }
    return k;
  }

  std::size_t p_;
};

}  // namespace

FeatureSet cfs_select(const Dataset& ds, const DiscretizationSpec& disc) {
  ds.validate();
  const std::size_t p = ds.cols();
  const auto view = discretize_all(ds, disc);

  std::vector<double> hx(p), su_label(p);
  const double hy = entropy_of_counts(
      [&] {
        std::vector<std::int64_t> c(2, 0);
        for (int y : view.labels) ++c[y];
        return c;
      }(),
      static_cast<std::int64_t>(view.labels.size()));
  for (std::size_t j = 0; j < p; ++j) {
    const auto t = ContingencyTable::cross(view.bins[j], view.labels, view.nbins, 2);
    hx[j] = entropy(t, 0);
    su_label[j] = hx[j] + hy > 0.0 ? 2.0 * mutual_information(t) / (hx[j] + hy) : 0.0;
  }

  std::unordered_map<std::size_t, double> su_pair_cache;
  auto su_pair = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    const std::size_t k = a * p + b;
    auto it = su_pair_cache.find(k);
    if (it != su_pair_cache.end()) return it->second;
    const auto t = ContingencyTable::cross(view.bins[a], view.bins[b], view.nbins, view.nbins);
    const double denom = hx[a] + hx[b];
    const double su = denom > 0.0 ? 2.0 * mutual_information(t) / denom : 0.0;
    su_pair_cache.emplace(k, su);
    return su;
  };

  auto merit_of = [&](const std::vector<std::size_t>& subset) {
    const double k = static_cast<double>(subset.size());
    if (subset.empty()) return 0.0;
    double rcf = 0.0;
    for (auto f : subset) rcf += su_label[f];
    rcf /= k;
    double rff = 0.0;
    if (subset.size() > 1) {
      for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
          rff += su_pair(subset[i], subset[j]);
      rff /= k * (k - 1.0) / 2.0;
    }
    return k * rcf / std::sqrt(k + k * (k - 1.0) * rff);
  };

  SubsetSearch search(p);
  auto node = search.run(merit_of, [](const SubsetSearch::Node&) { return false; });

  FeatureSet out;
  out.indices = node.order;
  out.scores = node.path_merits;
  return out;
}

FeatureSet consistency_select(const Dataset& ds, const DiscretizationSpec& disc) {
  ds.validate();
  const std::size_t p = ds.cols();
  const std::size_t n = ds.rows();
  const auto view = discretize_all(ds, disc);

  auto consistency_of = [&](const std::vector<std::size_t>& subset) {
    // group instances by their discretized pattern over the subset
    std::unordered_map<std::string, std::pair<std::int64_t, std::int64_t>> groups;
    groups.reserve(n);
    std::string pattern(subset.size(), '\0');
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t f = 0; f < subset.size(); ++f)
        pattern[f] = static_cast<char>(view.bins[subset[f]][i]);
      auto& g = groups[pattern];
      (view.labels[i] == 0 ? g.first : g.second)++;
    }
    std::int64_t inconsistent = 0;
    for (const auto& [key, g] : groups) inconsistent += std::min(g.first, g.second);
    return 1.0 - static_cast<double>(inconsistent) / static_cast<double>(n);
  };

  std::vector<std::size_t> all(p);
  std::iota(all.begin(), all.end(), 0);
  const double full_consistency = consistency_of(all);

  SubsetSearch search(p);
  auto node = search.run(consistency_of, [&](const SubsetSearch::Node& nd) {
    return nd.merit >= full_consistency - 1e-12;
  });

  FeatureSet out;
  out.indices = node.order;
  out.scores = node.path_merits;
  return out;
}

FeatureWeights rf_importance(const Dataset& ds, ImportanceKind kind, int trees, Rng& rng) {
  ForestParams params;
  params.trees = trees;
  const ForestModel model = forest_fit(ds, params, rng);
  FeatureWeights w = forest_importance(model, ds, kind, rng);
  w.method = kind == ImportanceKind::Impurity ? "rf_impurity" : "rf_permutation";
  return w;
}

}  // namespace filterbench
