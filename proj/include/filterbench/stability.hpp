#pragma once

#include <vector>

#include "filterbench/dataset.hpp"
#include "filterbench/filters.hpp"

namespace filterbench {

// Chance-corrected stability of m feature sets over p features:
//
//   N = 1 - [ (1/p) sum_j (m/(m-1)) (h_j/m)(1 - h_j/m) ]
//         / [ (q/(mp)) (1 - q/(mp)) ]
//
// where h_j counts the sets containing feature j and q = sum_j h_j.
// Equals 1 iff all sets are identical; throws DegenerateSelection when
// q = 0 or q = m*p (the metric is undefined there).
double stability(const std::vector<std::vector<std::size_t>>& sets, std::size_t p);

// |selected ∩ Relevant| / |Relevant|
double relevant_fraction(const FeatureSet& selected, const std::vector<FeatureRole>& roles);

}  // namespace filterbench
