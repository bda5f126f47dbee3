#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace filterbench {

enum class Discretizer { EqualFrequency, EqualWidth };

struct DiscretizationSpec {
  Discretizer strategy = Discretizer::EqualFrequency;
  int bins = 10;
};

// Bin indices in [0, bins). EqualFrequency keeps ties in one bin (stable by
// value); EqualWidth clamps to the last bin. Constant input lands in bin 0.
std::vector<int> discretize(std::span<const double> values, const DiscretizationSpec& spec);

// Non-negative counts over 2 or 3 categorical axes, flat row-major storage.
class ContingencyTable {
 public:
  explicit ContingencyTable(std::vector<std::size_t> shape);

  static ContingencyTable cross(std::span<const int> x, std::span<const int> y,
                                std::size_t nx, std::size_t ny);
  static ContingencyTable cross3(std::span<const int> x, std::span<const int> z,
                                 std::span<const int> y, std::size_t nx,
                                 std::size_t nz, std::size_t ny);

  std::size_t axes() const { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_[axis]; }
  std::int64_t total() const { return n_; }

  std::int64_t at(std::size_t i, std::size_t j) const { return counts_[i * shape_[1] + j]; }
  std::int64_t at(std::size_t i, std::size_t j, std::size_t k) const {
    return counts_[(i * shape_[1] + j) * shape_[2] + k];
  }
  void add(std::size_t i, std::size_t j, std::int64_t c = 1);
  void add3(std::size_t i, std::size_t j, std::size_t k, std::int64_t c = 1);

  std::vector<std::int64_t> marginal(std::size_t axis) const;
  // joint counts collapsed onto a subset of axes, in axis order
  std::vector<std::int64_t> collapse(std::span<const std::size_t> keep) const;
  const std::vector<std::int64_t>& counts() const { return counts_; }

 private:
  std::vector<std::size_t> shape_;
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

// Plug-in Shannon entropy in bits; 0 log 0 := 0.
double entropy_of_counts(std::span<const std::int64_t> counts, std::int64_t n);

// Marginal entropy of one axis.
double entropy(const ContingencyTable& t, std::size_t axis);
// Joint entropy over all axes of the table.
double joint_entropy(const ContingencyTable& t);

// 2-way table: I(X;Y) = H(X) + H(Y) - H(X,Y), bits.
double mutual_information(const ContingencyTable& t);

// 3-way table with axes (X, Z, Y):
double conditional_mi(const ContingencyTable& t);  // I(X;Y|Z)
double joint_mi(const ContingencyTable& t);        // I(X,Z;Y)

}  // namespace filterbench
