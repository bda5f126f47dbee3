#include "filterbench/relief.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "filterbench/kernels.hpp"

namespace filterbench {

const char* to_string(ReliefVariant v) {
  switch (v) {
    case ReliefVariant::Relief: return "relief";
    case ReliefVariant::ReliefFequalK: return "relieff_equal_k";
    case ReliefVariant::ReliefFexpRank: return "relieff_exp_rank";
    case ReliefVariant::ReliefFbestK: return "relieff_best_k";
    case ReliefVariant::ReliefFdistance: return "relieff_distance";
    case ReliefVariant::ReliefFsqrDistance: return "relieff_sqr_distance";
    case ReliefVariant::ReliefFmerit: return "relieff_merit";
    case ReliefVariant::ReliefFavgC: return "relieff_avg_c";
    case ReliefVariant::ReliefFexpC: return "relieff_exp_c";
    case ReliefVariant::ReliefFpa: return "relieff_pa";
    case ReliefVariant::ReliefFpe: return "relieff_pe";
    case ReliefVariant::ReliefFsmp: return "relieff_smp";
    case ReliefVariant::ReliefKukar: return "relief_kukar";
  }
  return "?";
}

bool relief_is_cost_sensitive(ReliefVariant v) {
  switch (v) {
    case ReliefVariant::ReliefFavgC:
    case ReliefVariant::ReliefFexpC:
    case ReliefVariant::ReliefFpa:
    case ReliefVariant::ReliefFpe:
    case ReliefVariant::ReliefFsmp:
    case ReliefVariant::ReliefKukar:
      return true;
    default:
      return false;
  }
}

void ReliefParams::validate() const {
  if (k_neighbors < 1) throw Error("ReliefParams: k_neighbors must be >= 1");
  if (sigma <= 0.0) throw Error("ReliefParams: sigma must be positive");
  if (relief_is_cost_sensitive(variant) != cost.has_value())
    throw Error("ReliefParams: cost matrix required exactly for cost-sensitive variants");
  if (cost) cost->validate();
}

namespace {

struct Neighbor {
  double distance;
  std::size_t index;
};

// per-class neighbor weighting factors in rank order
std::vector<double> rank_factors(const std::vector<Neighbor>& nb, ReliefVariant v,
                                 double sigma, double min_nonzero) {
  std::vector<double> f(nb.size(), 1.0);
  switch (v) {
    case ReliefVariant::ReliefFexpRank:
    case ReliefVariant::ReliefFmerit:
    case ReliefVariant::ReliefFavgC:
    case ReliefVariant::ReliefFexpC:
    case ReliefVariant::ReliefFpa:
    case ReliefVariant::ReliefFpe:
    case ReliefVariant::ReliefFsmp: {
      double factor = 1.0;
      for (std::size_t i = 1; i < nb.size(); ++i) {
        if (nb[i].distance != nb[i - 1].distance)
          factor = std::exp(-(static_cast<double>(i) * static_cast<double>(i)) /
                            (sigma * sigma));
        f[i] = factor;
      }
      break;
    }
    case ReliefVariant::ReliefFdistance:
      for (std::size_t i = 0; i < nb.size(); ++i)
        f[i] = nb[i].distance > 0.0 ? 1.0 / nb[i].distance : 2.0 / min_nonzero;
      break;
    case ReliefVariant::ReliefFsqrDistance:
      for (std::size_t i = 0; i < nb.size(); ++i)
        f[i] = nb[i].distance > 0.0 ? 1.0 / (nb[i].distance * nb[i].distance)
                                    : 2.0 / (min_nonzero * min_nonzero);
      break;
    default:
      break;  // equal weights
  }
  return f;
}

std::vector<std::size_t> relief_sample(const Dataset& ds, const ReliefParams& params,
                                       Rng& rng) {
  const std::size_t n = ds.rows();
  const std::size_t m = params.sample_size.value_or(n);

  if (params.variant == ReliefVariant::ReliefFsmp) {
    // sampling stratified by expected misclassification cost
    std::vector<std::size_t> members[2];
    for (std::size_t i = 0; i < n; ++i) members[ds.label(i)].push_back(i);
    const double p0 = static_cast<double>(members[0].size()) / static_cast<double>(n);
    const double p1 = 1.0 - p0;
    const auto& cost = *params.cost;
    const double e0 = p1 * cost(0, 1) / (1.0 - p0);
    const double e1 = p0 * cost(1, 0) / (1.0 - p1);
    const double esum = p0 * e0 + p1 * e1;
    const double q0 = esum > 0.0 ? p0 * e0 / esum : p0;
    std::vector<std::size_t> sample;
    sample.reserve(m);
    const std::size_t take0 = static_cast<std::size_t>(std::lround(q0 * static_cast<double>(m)));
    const std::size_t takes[2] = {take0, m - take0};
    for (int cls = 0; cls < 2; ++cls) {
      const auto& pool = members[cls];
      if (pool.empty()) continue;
      const std::size_t whole = takes[cls] / pool.size();
      for (std::size_t r = 0; r < whole; ++r)
        sample.insert(sample.end(), pool.begin(), pool.end());
      std::vector<std::size_t> shuffled = pool;
      rng.shuffle(shuffled);
      sample.insert(sample.end(), shuffled.begin(),
                    shuffled.begin() + (takes[cls] - whole * pool.size()));
    }
    return sample;
  }

  if (m >= n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(idx);
  idx.resize(m);
  return idx;
}

}  // namespace

FeatureWeights relief_score(const Dataset& ds, const ReliefParams& params, Rng& rng) {
  params.validate();
  ds.validate();
  const std::size_t n = ds.rows();
  const std::size_t p = ds.cols();
  const auto& kern = kernels::active();
  const ReliefVariant variant = params.variant;

  std::size_t class_count[2] = {0, 0};
  for (std::size_t i = 0; i < n; ++i) ++class_count[ds.label(i)];
  const bool single_pair = variant == ReliefVariant::Relief ||
                           variant == ReliefVariant::ReliefKukar;
  if (!single_pair && (class_count[0] < 2 || class_count[1] < 2))
    throw ClassTooSmall("relief_score: need at least 2 instances per class");

  // range normalization; zero-range features contribute nothing
  std::vector<double> inv_range(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double mn = ds(0, j), mx = ds(0, j);
    for (std::size_t i = 1; i < n; ++i) {
      mn = std::min(mn, ds(i, j));
      mx = std::max(mx, ds(i, j));
    }
    if (mx > mn) inv_range[j] = 1.0 / (mx - mn);
  }

  const double prob[2] = {static_cast<double>(class_count[0]) / static_cast<double>(n),
                          static_cast<double>(class_count[1]) / static_cast<double>(n)};

  // miss/hit normalization factors per variant; clnorm[cur][cl]
  double hit_w[2] = {1.0, 1.0};
  double miss_w[2] = {1.0, 1.0};  // indexed by current class (binary: cl = 1-cur)
  if (variant == ReliefVariant::ReliefFavgC) {
    const auto& c = *params.cost;
    const double avg[2] = {c(0, 1), c(1, 0)};  // mean off-diagonal cost per row
    for (int cur = 0; cur < 2; ++cur) {
      hit_w[cur] = avg[cur];
      miss_w[cur] = c(cur, 1 - cur);
    }
  } else if (variant == ReliefVariant::ReliefFpa) {
    const auto& c = *params.cost;
    const double avg[2] = {c(0, 1), c(1, 0)};
    const double s = avg[0] + avg[1];
    for (int cur = 0; cur < 2; ++cur)
      miss_w[cur] = (avg[1 - cur] / s) / (1.0 - avg[cur] / s);
  } else if (variant == ReliefVariant::ReliefFexpC) {
    const auto& c = *params.cost;
    const double e[2] = {prob[1] * c(0, 1) / (1.0 - prob[0]),
                         prob[0] * c(1, 0) / (1.0 - prob[1])};
    for (int cur = 0; cur < 2; ++cur) {
      hit_w[cur] = e[cur];
      miss_w[cur] = prob[1 - cur] * c(cur, 1 - cur) / (1.0 - prob[cur]);
    }
  } else if (variant == ReliefVariant::ReliefFpe) {
    const auto& c = *params.cost;
    const double e[2] = {prob[1] * c(0, 1) / (1.0 - prob[0]),
                         prob[0] * c(1, 0) / (1.0 - prob[1])};
    const double esum = prob[0] * e[0] + prob[1] * e[1];
    for (int cur = 0; cur < 2; ++cur)
      miss_w[cur] = (prob[1 - cur] * e[1 - cur] / esum) /
                    (1.0 - prob[cur] * e[cur] / esum);
  } else if (variant == ReliefVariant::ReliefKukar) {
    const auto& c = *params.cost;
    const double e[2] = {prob[1] * c(0, 1) / (1.0 - prob[0]),
                         prob[0] * c(1, 0) / (1.0 - prob[1])};
    const double esum = prob[0] * e[0] + prob[1] * e[1];
    for (int cur = 0; cur < 2; ++cur) miss_w[cur] = e[cur] / esum;
  } else {
    // plain ReliefF miss normalization P(miss class)/(1 - P(current))
    for (int cur = 0; cur < 2; ++cur) miss_w[cur] = prob[1 - cur] / (1.0 - prob[cur]);
  }

  const auto sample = relief_sample(ds, params, rng);
  const double m = static_cast<double>(sample.size());
  const auto k_cap = static_cast<std::size_t>(params.k_neighbors);

  std::vector<double> p_hit(p, 0.0), p_miss(p, 0.0);
  // bestK keeps running means per neighbor rank
  std::vector<double> best_hit, best_miss;
  if (variant == ReliefVariant::ReliefFbestK) {
    best_hit.assign(k_cap * p, 0.0);
    best_miss.assign(k_cap * p, 0.0);
  }

  std::vector<double> dist(n);
  std::vector<Neighbor> nb[2];
  std::vector<double> inc(p);

  for (const std::size_t cur : sample) {
    const int cur_class = ds.label(cur);
    const auto cur_row = ds.row(cur);

    for (std::size_t i = 0; i < n; ++i) {
      if (i == cur) continue;
      dist[i] = single_pair
                    ? kern.euclidean_sq(cur_row.data(), ds.row(i).data(), inv_range.data(), p)
                    : kern.manhattan(cur_row.data(), ds.row(i).data(), inv_range.data(), p);
    }

    if (single_pair) {
      std::size_t hit = n, miss = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == cur) continue;
        auto& best = ds.label(i) == cur_class ? hit : miss;
        if (best == n || dist[i] < dist[best]) best = i;
      }
      if (hit == n || miss == n) throw ClassTooSmall("relief_score: missing hit or miss");
      if (variant == ReliefVariant::Relief) {
        kern.absdiff_scaled_add(p_hit.data(), cur_row.data(), ds.row(hit).data(),
                                inv_range.data(), 1.0, p);
        kern.absdiff_scaled_add(p_miss.data(), cur_row.data(), ds.row(miss).data(),
                                inv_range.data(), 1.0, p);
      } else {  // Kukar: cost-weighted miss, unit hit
        kern.absdiff_scaled_add(p_hit.data(), cur_row.data(), ds.row(hit).data(),
                                inv_range.data(), 1.0, p);
        kern.absdiff_scaled_add(p_miss.data(), cur_row.data(), ds.row(miss).data(),
                                inv_range.data(), miss_w[cur_class], p);
      }
      continue;
    }

    nb[0].clear();
    nb[1].clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (i == cur) continue;
      nb[ds.label(i)].push_back({dist[i], i});
    }
    for (auto& list : nb)
      std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.index < b.index;
      });

    double min_nonzero = 0.0;
    if (variant == ReliefVariant::ReliefFdistance ||
        variant == ReliefVariant::ReliefFsqrDistance) {
      min_nonzero = std::numeric_limits<double>::max();
      for (const auto& list : nb)
        for (const auto& x : list)
          if (x.distance > 0.0) {
            min_nonzero = std::min(min_nonzero, x.distance);
            break;
          }
      if (min_nonzero == std::numeric_limits<double>::max()) min_nonzero = 1.0;
    }

    for (int cl = 0; cl < 2; ++cl) {
      auto& list = nb[cl];
      if (list.empty()) continue;
      const std::size_t upper = std::min(k_cap, list.size());
      const auto factors = rank_factors(list, variant, params.sigma, min_nonzero);
      const bool is_hit = cl == cur_class;
      const double norm = is_hit ? hit_w[cur_class] : miss_w[cur_class];
      auto& acc = is_hit ? p_hit : p_miss;

      if (variant == ReliefVariant::ReliefFbestK) {
        auto* ranks = is_hit ? best_hit.data() : best_miss.data();
        std::fill(inc.begin(), inc.end(), 0.0);
        double weight_sum = 0.0;
        for (std::size_t i = 0; i < upper; ++i) {
          weight_sum += 1.0;
          kern.absdiff_scaled_add(inc.data(), cur_row.data(), ds.row(list[i].index).data(),
                                  inv_range.data(), norm, p);
          double* slot = ranks + i * p;
          for (std::size_t j = 0; j < p; ++j) slot[j] += inc[j] / weight_sum;
        }
        // ranks beyond the available neighbors keep the last running mean
        for (std::size_t i = upper; i < k_cap; ++i) {
          double* slot = ranks + i * p;
          for (std::size_t j = 0; j < p; ++j) slot[j] += inc[j] / weight_sum;
        }
        continue;
      }

      std::fill(inc.begin(), inc.end(), 0.0);
      double weight_sum = 0.0;
      if (variant == ReliefVariant::ReliefFmerit) {
        for (std::size_t i = 0; i < upper; ++i) {
          weight_sum += factors[i];
          const double sum_diff = list[i].distance;  // Manhattan = sum of diffs
          if (sum_diff <= 0.0) continue;
          kern.absdiff_scaled_add(inc.data(), cur_row.data(), ds.row(list[i].index).data(),
                                  inv_range.data(), factors[i] / sum_diff, p);
        }
      } else {
        for (std::size_t i = 0; i < upper; ++i) {
          weight_sum += factors[i];
          kern.absdiff_scaled_add(inc.data(), cur_row.data(), ds.row(list[i].index).data(),
                                  inv_range.data(), factors[i], p);
        }
      }
      if (weight_sum <= 0.0) continue;
      for (std::size_t j = 0; j < p; ++j) acc[j] += norm * inc[j] / weight_sum;
    }
  }

  FeatureWeights out{to_string(variant), std::vector<double>(p, 0.0), true};
  if (variant == ReliefVariant::ReliefFbestK) {
    for (std::size_t j = 0; j < p; ++j) {
      double best = -std::numeric_limits<double>::max();
      for (std::size_t i = 0; i < k_cap; ++i)
        best = std::max(best, (best_miss[i * p + j] - best_hit[i * p + j]) / m);
      out.weights[j] = best;
    }
  } else {
    for (std::size_t j = 0; j < p; ++j) out.weights[j] = (p_miss[j] - p_hit[j]) / m;
  }
  return out;
}

}  // namespace filterbench
