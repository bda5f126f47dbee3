#include "filterbench/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace filterbench {

std::vector<int> discretize(std::span<const double> values, const DiscretizationSpec& spec) {
  const std::size_t n = values.size();
  const int bins = spec.bins;
  std::vector<int> out(n, 0);
  if (n == 0) return out;

  if (spec.strategy == Discretizer::EqualWidth) {
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    const double mn = *mn_it, mx = *mx_it;
    if (mx == mn) return out;
    const double width = (mx - mn) / bins;
    for (std::size_t i = 0; i < n; ++i) {
      int b = static_cast<int>((values[i] - mn) / width);
      out[i] = std::clamp(b, 0, bins - 1);
    }
    return out;
  }

  // equal frequency: bins by sorted position; a tie group lands in the bin
  // of its midpoint position so heavy ties cannot swallow their neighbors
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::size_t pos = 0;
  while (pos < n) {
    std::size_t end = pos;
    while (end < n && values[order[end]] == values[order[pos]]) ++end;
    const std::size_t mid = (pos + end - 1) / 2;
    const int b = pos == 0 && end == n
                      ? 0
                      : static_cast<int>((mid * static_cast<std::size_t>(bins)) / n);
    for (std::size_t i = pos; i < end; ++i) out[order[i]] = b;
    pos = end;
  }
  return out;
}

ContingencyTable::ContingencyTable(std::vector<std::size_t> shape)
    : shape_(std::move(shape)) {
  if (shape_.size() != 2 && shape_.size() != 3)
    throw std::invalid_argument("ContingencyTable: 2 or 3 axes");
  std::size_t cells = 1;
  for (auto d : shape_) cells *= d;
  counts_.assign(cells, 0);
}

ContingencyTable ContingencyTable::cross(std::span<const int> x, std::span<const int> y,
                                         std::size_t nx, std::size_t ny) {
  ContingencyTable t({nx, ny});
  for (std::size_t i = 0; i < x.size(); ++i) t.add(x[i], y[i]);
  return t;
}

ContingencyTable ContingencyTable::cross3(std::span<const int> x, std::span<const int> z,
                                          std::span<const int> y, std::size_t nx,
                                          std::size_t nz, std::size_t ny) {
  ContingencyTable t({nx, nz, ny});
  for (std::size_t i = 0; i < x.size(); ++i) t.add3(x[i], z[i], y[i]);
  return t;
}

void ContingencyTable::add(std::size_t i, std::size_t j, std::int64_t c) {
  counts_[i * shape_[1] + j] += c;
  n_ += c;
}

void ContingencyTable::add3(std::size_t i, std::size_t j, std::size_t k, std::int64_t c) {
  counts_[(i * shape_[1] + j) * shape_[2] + k] += c;
  n_ += c;
}

std::vector<std::int64_t> ContingencyTable::marginal(std::size_t axis) const {
  return collapse(std::vector<std::size_t>{axis});
}

std::vector<std::int64_t> ContingencyTable::collapse(std::span<const std::size_t> keep) const {
  std::size_t out_cells = 1;
  for (auto a : keep) out_cells *= shape_[a];
  std::vector<std::int64_t> out(out_cells, 0);

  std::vector<std::size_t> idx(shape_.size(), 0);
  for (std::size_t flat = 0; flat < counts_.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t a = shape_.size(); a-- > 0;) {
      idx[a] = rem % shape_[a];
      rem /= shape_[a];
    }
    std::size_t o = 0;
    for (auto a : keep) o = o * shape_[a] + idx[a];
    out[o] += counts_[flat];
  }
  return out;
}

double entropy_of_counts(std::span<const std::int64_t> counts, std::int64_t n) {
  if (n <= 0) return 0.0;
  double h = 0.0;
  const double dn = static_cast<double>(n);
  for (auto c : counts) {
    if (c > 0) {
      const double p = static_cast<double>(c) / dn;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double entropy(const ContingencyTable& t, std::size_t axis) {
  const auto m = t.marginal(axis);
  return entropy_of_counts(m, t.total());
}

double joint_entropy(const ContingencyTable& t) {
  return entropy_of_counts(t.counts(), t.total());
}

double mutual_information(const ContingencyTable& t) {
  return entropy(t, 0) + entropy(t, 1) - joint_entropy(t);
}

double conditional_mi(const ContingencyTable& t) {
  // I(X;Y|Z) = H(X,Z) + H(Y,Z) - H(Z) - H(X,Z,Y)
  const std::size_t xz[] = {0, 1};
  const std::size_t yz[] = {1, 2};
  const double h_xz = entropy_of_counts(t.collapse(xz), t.total());
  const double h_yz = entropy_of_counts(t.collapse(yz), t.total());
  const double h_z = entropy(t, 1);
  return h_xz + h_yz - h_z - joint_entropy(t);
}

double joint_mi(const ContingencyTable& t) {
  // I(X,Z;Y) = H(X,Z) + H(Y) - H(X,Z,Y)
  const std::size_t xz[] = {0, 1};
  const double h_xz = entropy_of_counts(t.collapse(xz), t.total());
  return h_xz + entropy(t, 2) - joint_entropy(t);
}

}  // namespace filterbench
