#pragma once

#include <optional>

#include "filterbench/filters.hpp"

namespace filterbench {

enum class ReliefVariant {
  Relief, ReliefFequalK, ReliefFexpRank, ReliefFbestK, ReliefFdistance,
  ReliefFsqrDistance, ReliefFmerit, ReliefFavgC, ReliefFexpC, ReliefFpa,
  ReliefFpe, ReliefFsmp, ReliefKukar,
};

const char* to_string(ReliefVariant v);
bool relief_is_cost_sensitive(ReliefVariant v);

struct ReliefParams {
  ReliefVariant variant = ReliefVariant::ReliefFequalK;
  int k_neighbors = 10;
  std::optional<std::size_t> sample_size;  // nullopt = all instances
  double sigma = 20.0;                     // exp-rank decay
  std::optional<CostMatrix> cost;          // required for cost variants

  void validate() const;
};

// Relief family weights. diff(j,a,b) = |x_aj - x_bj| / (max_j - min_j); a
// feature with zero range contributes 0. Original Relief takes the single
// nearest hit/miss under Euclidean distance; the ReliefF variants rank
// neighbors per class by Manhattan distance and weight them per variant.
// Neighbor ties break on the lower instance index. Weights of the plain
// variants lie in [-1, 1]; cost-sensitive contributions scale with the cost
// matrix.
FeatureWeights relief_score(const Dataset& ds, const ReliefParams& params, Rng& rng);

}  // namespace filterbench
