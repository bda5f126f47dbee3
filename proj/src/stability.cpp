#include "filterbench/stability.hpp"

namespace filterbench {

double stability(const std::vector<std::vector<std::size_t>>& sets, std::size_t p) {
  const std::size_t m = sets.size();
  if (m < 2) throw DegenerateSelection("stability: need at least 2 sets");
  if (p < 1) throw DegenerateSelection("stability: p must be >= 1");

  std::vector<std::int64_t> h(p, 0);
  std::int64_t q = 0;
  for (const auto& set : sets) {
    for (auto j : set) {
      if (j >= p) throw DegenerateSelection("stability: feature index out of range");
      ++h[j];
      ++q;
    }
  }
  const double dm = static_cast<double>(m);
  const double dp = static_cast<double>(p);
  if (q == 0 || q == static_cast<std::int64_t>(m * p))
    throw DegenerateSelection("stability: all-empty or all-full selections");

  double numerator = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    const double f = static_cast<double>(h[j]) / dm;
    numerator += dm / (dm - 1.0) * f * (1.0 - f);
  }
  numerator /= dp;
  const double qf = static_cast<double>(q) / (dm * dp);
  return 1.0 - numerator / (qf * (1.0 - qf));
}

double relevant_fraction(const FeatureSet& selected, const std::vector<FeatureRole>& roles) {
  std::size_t relevant = 0, hit = 0;
  for (auto r : roles)
    if (r == FeatureRole::Relevant) ++relevant;
  if (relevant == 0) return 0.0;
  for (auto j : selected.indices)
    if (j < roles.size() && roles[j] == FeatureRole::Relevant) ++hit;
  return static_cast<double>(hit) / static_cast<double>(relevant);
}

}  // namespace filterbench
