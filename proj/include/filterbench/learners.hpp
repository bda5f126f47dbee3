#pragma once

#include <cstdint>
#include <vector>

#include "filterbench/dataset.hpp"
#include "filterbench/filters.hpp"
#include "filterbench/rng.hpp"

namespace filterbench {

// Gaussian naive Bayes; per-class feature variances floored at 1e-9.
struct NbModel {
  double log_prior[2];
  std::vector<double> mean[2];
  std::vector<double> var[2];
};

NbModel nb_fit(const Dataset& train);
// posterior probability of class 1, computed in log space
double nb_score_row(const NbModel& model, std::span<const double> row);
std::vector<double> nb_score(const NbModel& model, const Dataset& data);

struct ForestParams {
  int trees = 500;
  int mtry = 0;  // 0 = ceil(sqrt(p))
  bool bootstrap = true;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1, right = -1;
  std::int64_t count0 = 0, count1 = 0;
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at 0
  std::vector<std::size_t> oob;
};

struct ForestModel {
  std::vector<Tree> trees;
  ForestParams params;
  std::size_t n_features = 0;
  std::size_t n_train = 0;
  std::vector<double> impurity_importance;  // mean Gini decrease per feature
};

// Bagged CART forest, Gini splits on midpoints between consecutive distinct
// values, mtry candidate features per split, grown to purity. Deterministic
// given (train, params, seed).
ForestModel forest_fit(const Dataset& train, const ForestParams& params, Rng& rng);

// fraction of trees voting class 1 (per-tree majority vote, ties vote 0)
double forest_score_row(const ForestModel& model, std::span<const double> row);
std::vector<double> forest_score(const ForestModel& model, const Dataset& data);

enum class ImportanceKind { Impurity, Permutation };

// Impurity: total Gini decrease per feature across trees, averaged.
// Permutation: mean out-of-bag AUC drop when the feature's OOB column is
// shuffled, averaged over trees.
FeatureWeights forest_importance(const ForestModel& model, const Dataset& train,
                                 ImportanceKind kind, Rng& rng);

}  // namespace filterbench
