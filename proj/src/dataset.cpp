#include "filterbench/dataset.hpp"

#include <cmath>

namespace filterbench {

const char* to_string(FeatureRole role) {
  switch (role) {
    case FeatureRole::Relevant: return "relevant";
    case FeatureRole::Redundant: return "redundant";
    case FeatureRole::Irrelevant: return "irrelevant";
  }
  return "?";
}

FeatureRole role_from_string(const std::string& s) {
  if (s == "relevant") return FeatureRole::Relevant;
  if (s == "redundant") return FeatureRole::Redundant;
  if (s == "irrelevant") return FeatureRole::Irrelevant;
  throw InvalidDataset("unknown feature role: " + s);
}

std::vector<double> Dataset::column(std::size_t j) const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = values_[i * p_ + j];
  return out;
}

std::size_t Dataset::count_role(FeatureRole r) const {
  std::size_t c = 0;
  for (auto role : roles_)
    if (role == r) ++c;
  return c;
}

void Dataset::validate() const {
  if (n_ < 2 || p_ < 1)
    throw InvalidDataset(name_ + ": need n >= 2 and p >= 1");
  if (roles_.size() != p_)
    throw InvalidDataset(name_ + ": roles length != p");
  bool has0 = false, has1 = false;
  for (std::size_t i = 0; i < n_; ++i) {
    if (labels_[i] == 0) has0 = true;
    else if (labels_[i] == 1) has1 = true;
    else throw InvalidDataset(name_ + ": labels must be 0/1");
  }
  if (!has0 || !has1)
    throw SingleClass(name_ + ": both classes must be present");
  for (double v : values_)
    if (!std::isfinite(v))
      throw InvalidDataset(name_ + ": non-finite feature value");
}

Dataset Dataset::subset_rows(std::span<const std::size_t> idx) const {
  Dataset out(name_, idx.size(), p_);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const std::size_t i = idx[r];
    for (std::size_t j = 0; j < p_; ++j) out(r, j) = (*this)(i, j);
    out.set_label(r, labels_[i]);
  }
  out.roles_ = roles_;
  return out;
}

Dataset Dataset::subset_cols(std::span<const std::size_t> idx) const {
  Dataset out(name_, n_, idx.size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t c = 0; c < idx.size(); ++c) out(i, c) = (*this)(i, idx[c]);
  out.labels_ = labels_;
  for (std::size_t c = 0; c < idx.size(); ++c) out.set_role(c, roles_[idx[c]]);
  return out;
}

}  // namespace filterbench
