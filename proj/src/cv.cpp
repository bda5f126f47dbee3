#include "filterbench/cv.hpp"

#include <algorithm>
#include <string>

#include "filterbench/errors.hpp"

namespace filterbench {

FoldPlan plan_cv(const std::vector<int>& labels, int folds, int repeats, Rng& rng) {
  if (folds < 2) throw ClassTooSmall("plan_cv: folds must be >= 2");
  if (repeats < 1) throw ClassTooSmall("plan_cv: repeats must be >= 1");
  const std::size_t n = labels.size();

  std::vector<std::size_t> class0, class1;
  for (std::size_t i = 0; i < n; ++i) (labels[i] == 0 ? class0 : class1).push_back(i);
  for (const auto* cls : {&class0, &class1}) {
    if (cls->size() < static_cast<std::size_t>(folds))
      throw ClassTooSmall("plan_cv: a class has fewer than " + std::to_string(folds) +
                          " members");
  }

  FoldPlan plan;
  plan.folds = folds;
  plan.repeats = repeats;
  plan.assignments.reserve(static_cast<std::size_t>(folds) * repeats);

  for (int r = 0; r < repeats; ++r) {
    std::vector<int> fold_of(n, 0);
    for (auto* cls : {&class0, &class1}) {
      std::vector<std::size_t> shuffled = *cls;
      rng.shuffle(shuffled);
      for (std::size_t k = 0; k < shuffled.size(); ++k)
        fold_of[shuffled[k]] = static_cast<int>(k % folds);
    }
    for (int f = 0; f < folds; ++f) {
      FoldAssignment fa;
      fa.repeat = r;
      fa.fold = f;
      for (std::size_t i = 0; i < n; ++i)
        (fold_of[i] == f ? fa.test : fa.train).push_back(i);
      plan.assignments.push_back(std::move(fa));
    }
  }
  return plan;
}

}  // namespace filterbench
