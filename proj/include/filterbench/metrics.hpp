#pragma once

#include <span>
#include <string>
#include <vector>

namespace filterbench {

// The four benchmark criteria.
enum class Criterion { PredictiveAuc, RelevantFraction, Stability, Runtime };

const char* to_string(Criterion c);
Criterion criterion_from_string(const std::string& s);

// Mann-Whitney AUC with average-rank tie handling; equals pairwise counting
// P(score+ > score-) + 0.5 * P(tie) exactly. Throws SingleClass when only one
// label value appears.
double auc(std::span<const double> scores, std::span<const int> labels);

}  // namespace filterbench
