#pragma once

#include <string>
#include <vector>

#include "filterbench/dataset.hpp"
#include "filterbench/infotheory.hpp"
#include "filterbench/rng.hpp"

namespace filterbench {

struct FeatureWeights {
  std::string method;
  std::vector<double> weights;
  bool higher_is_better = true;
};

struct FeatureSet {
  std::vector<std::size_t> indices;  // selection order
  std::vector<double> scores;        // per-step selection scores
};

// Misclassification costs; cost(actual, predicted), zero diagonal. The
// benchmark default charges mistakes on the minority class (label 1)
// twenty-fold.
struct CostMatrix {
  double cost01 = 1.0;   // true class 0 predicted as 1
  double cost10 = 20.0;  // true class 1 predicted as 0
  double operator()(int actual, int predicted) const {
    if (actual == predicted) return 0.0;
    return actual == 0 ? cost01 : cost10;
  }
  void validate() const {
    if (cost01 <= 0.0 || cost10 <= 0.0)
      throw Error("CostMatrix: off-diagonal costs must be positive");
  }
};

enum class SplitScoreMethod {
  Accuracy, DistAngle, DistAUC, DistEuclid, DistHellinger, DKM, EqualDKM,
  EqualGini, EqualHellinger, EqualInf, GainRatio, Gini, ImpurityEuclid,
  ImpurityHellinger, InfGain, MDL, MyopicReliefF, UniformAccuracy, UniformDKM,
  UniformGini, UniformInf,
};

enum class StatScoreMethod {
  ChiSquared, AnovaF, KruskalWallis, PerFeatureAuc, SymmetricalUncertainty,
  OneR, GainRatioAlt,
};

enum class CostScoreMethod { DKMcost, GainRatioCost, MDLsmp };

const char* to_string(SplitScoreMethod m);
const char* to_string(StatScoreMethod m);
const char* to_string(CostScoreMethod m);

// Every feature is discretized (multiway split, one branch per occupied bin)
// and scored; constant features score 0 for every method.
FeatureWeights score_split(const Dataset& ds, SplitScoreMethod method,
                           const DiscretizationSpec& disc = {});

FeatureWeights score_stat(const Dataset& ds, StatScoreMethod method,
                          const DiscretizationSpec& disc = {},
                          const DiscretizationSpec& alt_disc = {Discretizer::EqualWidth, 10});

// DKMcost / GainRatioCost reweight within-node class probabilities by
// expected misclassification cost; MDLsmp resamples instances with
// probability proportional to class cost, then applies MDL.
FeatureWeights score_cost_sensitive(const Dataset& ds, CostScoreMethod method,
                                    const CostMatrix& cost, const DiscretizationSpec& disc,
                                    Rng& rng);

// k best-scoring indices, ties broken by the lower index.
FeatureSet select_top_k(const FeatureWeights& w, std::size_t k);

}  // namespace filterbench
