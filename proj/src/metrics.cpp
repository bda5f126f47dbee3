#include "filterbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "filterbench/errors.hpp"

namespace filterbench {

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::PredictiveAuc: return "auc";
    case Criterion::RelevantFraction: return "relevant_fraction";
    case Criterion::Stability: return "stability";
    case Criterion::Runtime: return "runtime";
  }
  return "?";
}

Criterion criterion_from_string(const std::string& s) {
  if (s == "auc") return Criterion::PredictiveAuc;
  if (s == "relevant_fraction") return Criterion::RelevantFraction;
  if (s == "stability") return Criterion::Stability;
  if (s == "runtime") return Criterion::Runtime;
  throw Error("unknown criterion: " + s);
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  const std::size_t n = scores.size();
  std::size_t npos = 0;
  for (int y : labels)
    if (y == 1) ++npos;
  const std::size_t nneg = n - npos;
  if (npos == 0 || nneg == 0) throw SingleClass("auc: both classes required");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // sum of average ranks of the positives (1-based ranks)
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
    i = j;
  }
  const double u = rank_sum_pos - 0.5 * static_cast<double>(npos) * (npos + 1);
  return u / (static_cast<double>(npos) * static_cast<double>(nneg));
}

}  // namespace filterbench
