#pragma once

#include <cstddef>
#include <vector>

#include "filterbench/rng.hpp"

namespace filterbench {

struct FoldAssignment {
  int repeat = 0;
  int fold = 0;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Stratified repeated k-fold plan. Within one repeat the test sets partition
// 0..n-1 and each test fold's class counts differ from the exact proportional
// share by at most one instance per class.
struct FoldPlan {
  int folds = 0;
  int repeats = 0;
  std::vector<FoldAssignment> assignments;  // repeats * folds entries
};

// Shuffles indices within each class, then deals them round-robin into folds.
// Throws ClassTooSmall when a class has fewer members than folds.
FoldPlan plan_cv(const std::vector<int>& labels, int folds, int repeats, Rng& rng);

}  // namespace filterbench
