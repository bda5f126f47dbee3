#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "filterbench/errors.hpp"

namespace filterbench {

enum class FeatureRole : std::uint8_t { Relevant, Redundant, Irrelevant };

const char* to_string(FeatureRole role);
FeatureRole role_from_string(const std::string& s);

// Row-major n x p feature matrix with binary labels and per-feature
// ground-truth roles. Immutable after construction; validate() enforces the
// invariants (finite entries, both classes present, role bookkeeping).
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string name, std::size_t n, std::size_t p)
      : name_(std::move(name)), n_(n), p_(p), values_(n * p, 0.0),
        labels_(n, 0), roles_(p, FeatureRole::Irrelevant) {}

  const std::string& name() const { return name_; }
  void set_name(std::string s) { name_ = std::move(s); }
  std::size_t rows() const { return n_; }
  std::size_t cols() const { return p_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * p_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * p_ + j]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * p_, p_}; }
  std::span<double> row(std::size_t i) { return {values_.data() + i * p_, p_}; }

  int label(std::size_t i) const { return labels_[i]; }
  void set_label(std::size_t i, int y) { labels_[i] = y; }
  const std::vector<int>& labels() const { return labels_; }

  FeatureRole role(std::size_t j) const { return roles_[j]; }
  void set_role(std::size_t j, FeatureRole r) { roles_[j] = r; }
  const std::vector<FeatureRole>& roles() const { return roles_; }

  std::vector<double> column(std::size_t j) const;
  std::size_t count_role(FeatureRole r) const;

  // throws InvalidDataset / SingleClass on violated invariants
  void validate() const;

  // rows picked by index; labels follow, roles unchanged
  Dataset subset_rows(std::span<const std::size_t> idx) const;
  // columns picked by index; roles follow
  Dataset subset_cols(std::span<const std::size_t> idx) const;

 private:
  std::string name_;
  std::size_t n_ = 0, p_ = 0;
  std::vector<double> values_;
  std::vector<int> labels_;
  std::vector<FeatureRole> roles_;
};

}  // namespace filterbench
