#pragma once

#include "filterbench/filters.hpp"
#include "filterbench/learners.hpp"

namespace filterbench {

enum class MiCriterion { MIM, JMI, JMIM, NJMIM, DISR, CMIM, MRMR, JIM };

const char* to_string(MiCriterion c);

// Greedy forward selection of k features on discretized data. Every
// criterion starts from argmax I(X;Y); candidate ties break on the lower
// index. JIM is the Gini-impurity analogue of JMI (reconstruction; the
// source only names it).
FeatureSet greedy_mi_select(const Dataset& ds, MiCriterion criterion, std::size_t k,
                            const DiscretizationSpec& disc = {});

// Correlation-based subset search: best-first forward search maximizing
// merit(S) = k*mean_su(f,Y) / sqrt(k + k(k-1)*mean_su(f,f')), with
// symmetrical uncertainty as the correlation; stops after 5 consecutive
// non-improving expansions.
FeatureSet cfs_select(const Dataset& ds, const DiscretizationSpec& disc = {});

// Consistency-rate subset search (best-first forward); stops once the
// consistency of the full feature set is reached or after 5 non-improving
// expansions.
FeatureSet consistency_select(const Dataset& ds, const DiscretizationSpec& disc = {});

// Random-forest importances as a filter.
FeatureWeights rf_importance(const Dataset& ds, ImportanceKind kind, int trees, Rng& rng);

}  // namespace filterbench
