#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "filterbench/filters.hpp"
#include "filterbench/infotheory.hpp"

namespace filterbench {

struct SelectionContext {
  const Dataset& train;
  std::size_t k;  // target size for ranking filters; subset methods ignore it
  DiscretizationSpec disc;
  std::uint64_t seed;
  std::optional<CostMatrix> cost;  // present on imbalanced scenarios
};

struct MethodInfo {
  std::string name;                  // canonical snake_case
  std::vector<std::string> aliases;  // source-package prefixed spellings
  bool cost_sensitive = false;
  bool multivariate = false;
  bool robust_class_noise = false;
  bool robust_attribute_noise = false;
  std::function<FeatureSet(const SelectionContext&)> select;
};

// Every benchmark method, including the "none" reference (all features).
const std::vector<MethodInfo>& method_registry();

// Resolves canonical names and aliases; throws UnknownMethod.
const MethodInfo& method_by_name(const std::string& name);

// Canonical names in registry order. include_cost=false drops the
// cost-sensitive variants.
std::vector<std::string> all_method_names(bool include_cost = true);

}  // namespace filterbench
