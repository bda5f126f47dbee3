#include "filterbench/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "filterbench/kernels.hpp"
#include "filterbench/metrics.hpp"

namespace filterbench {

namespace {
constexpr double kVarFloor = 1e-9;
}

NbModel nb_fit(const Dataset& train) {
  train.validate();
  const std::size_t n = train.rows(), p = train.cols();
  NbModel model;
  std::size_t count[2] = {0, 0};
  for (std::size_t i = 0; i < n; ++i) ++count[train.label(i)];
  for (int c = 0; c < 2; ++c) {
    model.log_prior[c] = std::log(static_cast<double>(count[c]) / static_cast<double>(n));
    model.mean[c].assign(p, 0.0);
    model.var[c].assign(p, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int c = train.label(i);
    const auto row = train.row(i);
    for (std::size_t j = 0; j < p; ++j) model.mean[c][j] += row[j];
  }
  for (int c = 0; c < 2; ++c)
    for (std::size_t j = 0; j < p; ++j) model.mean[c][j] /= static_cast<double>(count[c]);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = train.label(i);
    const auto row = train.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      const double d = row[j] - model.mean[c][j];
      model.var[c][j] += d * d;
    }
  }
  for (int c = 0; c < 2; ++c)
    for (std::size_t j = 0; j < p; ++j)
      model.var[c][j] = std::max(model.var[c][j] / static_cast<double>(count[c]), kVarFloor);
  return model;
}

double nb_score_row(const NbModel& model, std::span<const double> row) {
  double ll[2];
  for (int c = 0; c < 2; ++c) {
    double s = model.log_prior[c];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double d = row[j] - model.mean[c][j];
      s -= 0.5 * (std::log(2.0 * M_PI * model.var[c][j]) + d * d / model.var[c][j]);
    }
    ll[c] = s;
  }
  // p1 = 1 / (1 + exp(ll0 - ll1))
  const double delta = ll[0] - ll[1];
  if (delta > 700.0) return 0.0;
  if (delta < -700.0) return 1.0;
  return 1.0 / (1.0 + std::exp(delta));
}

std::vector<double> nb_score(const NbModel& model, const Dataset& data) {
  std::vector<double> out(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) out[i] = nb_score_row(model, data.row(i));
  return out;
}

namespace {

struct SplitChoice {
  double gain = -1.0;
  int feature = -1;
  double threshold = 0.0;
};

inline double gini_impurity(std::int64_t c0, std::int64_t c1) {
  const double m = static_cast<double>(c0 + c1);
  if (m == 0.0) return 0.0;
  const double p0 = static_cast<double>(c0) / m;
  const double p1 = static_cast<double>(c1) / m;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct TreeBuilder {
  const Dataset& data;
  int mtry;
  Rng& rng;
  std::vector<TreeNode>& nodes;
  std::vector<double>& impurity_acc;  // count-weighted Gini decrease per feature
  std::vector<std::pair<double, int>> scratch;

  int build(std::vector<std::size_t>& rows) {
    std::int64_t c0 = 0, c1 = 0;
    for (auto r : rows) (data.label(r) == 0 ? c0 : c1)++;

    const int node_id = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[node_id].count0 = c0;
    nodes[node_id].count1 = c1;
    if (c0 == 0 || c1 == 0 || rows.size() < 2) return node_id;

    const SplitChoice split = best_split(rows, c0, c1);
    if (split.feature < 0) return node_id;

    std::vector<std::size_t> left, right;
    for (auto r : rows)
      (data(r, split.feature) <= split.threshold ? left : right).push_back(r);
    impurity_acc[split.feature] += split.gain;

    nodes[node_id].feature = split.feature;
    nodes[node_id].threshold = split.threshold;
    rows.clear();
    rows.shrink_to_fit();
    const int l = build(left);
    nodes[node_id].left = l;
    const int r = build(right);
    nodes[node_id].right = r;
    return node_id;
  }

  SplitChoice best_split(const std::vector<std::size_t>& rows, std::int64_t c0,
                         std::int64_t c1) {
    const std::size_t p = data.cols();
    // candidate features sampled without replacement
    std::vector<int> features(p);
    std::iota(features.begin(), features.end(), 0);
    for (int k = 0; k < mtry && static_cast<std::size_t>(k) < p; ++k) {
      const std::size_t j =
          k + static_cast<std::size_t>(rng.next_below(p - static_cast<std::size_t>(k)));
      std::swap(features[k], features[j]);
    }
    const std::size_t m = rows.size();
    const double parent = static_cast<double>(m) * gini_impurity(c0, c1);

    SplitChoice best;
    for (int k = 0; k < mtry && static_cast<std::size_t>(k) < p; ++k) {
      const int f = features[k];
      scratch.clear();
      for (auto r : rows) scratch.emplace_back(data(r, f), data.label(r));
      std::sort(scratch.begin(), scratch.end());

      std::int64_t l0 = 0, l1 = 0;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        (scratch[i].second == 0 ? l0 : l1)++;
        if (scratch[i].first == scratch[i + 1].first) continue;
        const double child = static_cast<double>(l0 + l1) * gini_impurity(l0, l1) +
                             static_cast<double>(c0 - l0 + c1 - l1) *
                                 gini_impurity(c0 - l0, c1 - l1);
        const double gain = parent - child;
        const double threshold = 0.5 * (scratch[i].first + scratch[i + 1].first);
        if (gain > best.gain + 1e-12 ||
            (std::fabs(gain - best.gain) <= 1e-12 &&
             (f < best.feature || (f == best.feature && threshold < best.threshold)))) {
          if (gain > 0.0) best = {gain, f, threshold};
        }
      }
    }
    return best;
  }
};

int tree_leaf(const Tree& tree, std::span<const double> row) {
  int node = 0;
  while (tree.nodes[node].feature >= 0)
    node = row[tree.nodes[node].feature] <= tree.nodes[node].threshold
               ? tree.nodes[node].left
               : tree.nodes[node].right;
  return node;
}

inline int tree_vote(const Tree& tree, std::span<const double> row) {
  const auto& leaf = tree.nodes[tree_leaf(tree, row)];
  return leaf.count1 > leaf.count0 ? 1 : 0;
}

inline double tree_prob(const Tree& tree, std::span<const double> row) {
  const auto& leaf = tree.nodes[tree_leaf(tree, row)];
  return static_cast<double>(leaf.count1) /
         static_cast<double>(leaf.count0 + leaf.count1);
}

}  // namespace

ForestModel forest_fit(const Dataset& train, const ForestParams& params, Rng& rng) {
  train.validate();
  const std::size_t n = train.rows(), p = train.cols();
  ForestModel model;
  model.params = params;
  model.n_features = p;
  model.n_train = n;
  model.impurity_importance.assign(p, 0.0);
  const int mtry = params.mtry > 0
                       ? params.mtry
                       : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p))));

  model.trees.reserve(params.trees);
  std::vector<char> in_bag(n);
  for (int t = 0; t < params.trees; ++t) {
    Rng tree_rng(derive_seed(rng.next_u64(), {std::string("tree"), t}));
    std::vector<std::size_t> rows;
    rows.reserve(n);
    if (params.bootstrap) {
      std::fill(in_bag.begin(), in_bag.end(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<std::size_t>(tree_rng.next_below(n));
        rows.push_back(r);
        in_bag[r] = 1;
      }
    } else {
      rows.resize(n);
      std::iota(rows.begin(), rows.end(), 0);
      std::fill(in_bag.begin(), in_bag.end(), 1);
    }

    Tree tree;
    TreeBuilder builder{train, mtry, tree_rng, tree.nodes,
                        model.impurity_importance, {}};
    // a bootstrap can miss one class entirely; such a tree is a single leaf
    std::vector<std::size_t> root_rows = rows;
    builder.build(root_rows);
    for (std::size_t i = 0; i < n; ++i)
      if (!in_bag[i]) tree.oob.push_back(i);
    model.trees.push_back(std::move(tree));
  }
  const double scale = static_cast<double>(n) * static_cast<double>(params.trees);
  for (auto& v : model.impurity_importance) v /= scale;
  return model;
}

double forest_score_row(const ForestModel& model, std::span<const double> row) {
  int votes = 0;
  for (const auto& tree : model.trees) votes += tree_vote(tree, row);
  return static_cast<double>(votes) / static_cast<double>(model.trees.size());
}

std::vector<double> forest_score(const ForestModel& model, const Dataset& data) {
  std::vector<double> out(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i)
    out[i] = forest_score_row(model, data.row(i));
  return out;
}

FeatureWeights forest_importance(const ForestModel& model, const Dataset& train,
                                 ImportanceKind kind, Rng& rng) {
  const std::size_t p = model.n_features;
  FeatureWeights out{kind == ImportanceKind::Impurity ? "impurity" : "permutation",
                     std::vector<double>(p, 0.0), true};
  if (kind == ImportanceKind::Impurity) {
    out.weights = model.impurity_importance;
    return out;
  }

  std::vector<double> drops(p, 0.0);
  std::vector<int> used(p, 0);
  std::vector<double> base_scores, perm_scores, saved;
  std::vector<std::size_t> perm;
  for (const auto& tree : model.trees) {
    const auto& oob = tree.oob;
    if (oob.size() < 2) continue;
    std::vector<int> oob_labels(oob.size());
    bool both = false;
    for (std::size_t i = 0; i < oob.size(); ++i) {
      oob_labels[i] = train.label(oob[i]);
      if (oob_labels[i] != oob_labels[0]) both = true;
    }
    if (!both) continue;

    base_scores.resize(oob.size());
    std::vector<std::vector<double>> oob_rows(oob.size());
    for (std::size_t i = 0; i < oob.size(); ++i) {
      const auto row = train.row(oob[i]);
      oob_rows[i].assign(row.begin(), row.end());
      base_scores[i] = tree_prob(tree, oob_rows[i]);
    }
    const double base_auc = auc(base_scores, oob_labels);

    perm.resize(oob.size());
    for (std::size_t j = 0; j < p; ++j) {
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm);
      saved.resize(oob.size());
      for (std::size_t i = 0; i < oob.size(); ++i) saved[i] = oob_rows[i][j];
      for (std::size_t i = 0; i < oob.size(); ++i) oob_rows[i][j] = saved[perm[i]];
      perm_scores.resize(oob.size());
      for (std::size_t i = 0; i < oob.size(); ++i)
        perm_scores[i] = tree_prob(tree, oob_rows[i]);
      drops[j] += base_auc - auc(perm_scores, oob_labels);
      ++used[j];
      for (std::size_t i = 0; i < oob.size(); ++i) oob_rows[i][j] = saved[i];
    }
  }
  for (std::size_t j = 0; j < p; ++j)
    out.weights[j] = used[j] > 0 ? drops[j] / static_cast<double>(used[j]) : 0.0;
  return out;
}

}  // namespace filterbench
