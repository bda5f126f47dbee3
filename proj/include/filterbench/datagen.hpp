#pragma once

#include <string>
#include <vector>

#include "filterbench/dataset.hpp"
#include "filterbench/rng.hpp"

namespace filterbench {

// One benchmark scenario: structural dataset parameters plus noise rates.
struct ScenarioSpec {
  std::string name;
  int observations = 0;
  int features_total = 0;
  int features_relevant = 0;
  int features_redundant = 0;
  double class_noise = 0.0;
  double attribute_noise = 0.0;
  double minority_fraction = 0.5;

  void validate() const;  // throws InvalidSpec
};

// Knobs of the generator that the scenario table does not fix. Defaults are
// recorded in the dataset sidecar so generated data is self-describing.
struct GeneratorParams {
  int clusters_per_class = 2;
  double class_sep = 1.0;         // hypercube vertices at +-class_sep
  double redundant_noise_sd = 0.01;
  double scale_log_min = 1.0;     // per-feature scale, log-uniform
  double scale_log_max = 100.0;
  double shift_min = -1.0;        // per-feature shift, uniform
  double shift_max = 1.0;
};

// Gaussian clusters on hypercube vertices for the relevant block, noisy
// linear combinations for the redundant block, standard normal irrelevant
// features; per-feature scale/shift, then rows and columns are shuffled with
// roles tracking the permutation. Class sizes follow minority_fraction
// exactly. Deterministic given (spec, rng seed).
Dataset generate(const ScenarioSpec& spec, Rng& rng,
                 const GeneratorParams& params = {});

// Flips the labels of exactly round(rate*n) uniformly chosen instances.
Dataset inject_class_noise(const Dataset& ds, double rate, Rng& rng);

// Adds Gaussian noise with sd rate*sigma_j to every value of feature j,
// sigma_j being the feature's sample standard deviation.
Dataset inject_attribute_noise(const Dataset& ds, double rate, Rng& rng);

// The 13 built-in scenarios. The source table lists Imbalanced_1 twice; the
// second row (minority 0.1) is canonicalized as Imbalanced_2.
std::vector<ScenarioSpec> scenario_table();

const ScenarioSpec& scenario_by_name(const std::string& name);

// Generates the structural (clean) dataset and the noise-injected twin used
// for selection/training. They share instance identity; for scenarios
// without noise the two are the same object.
struct ScenarioData {
  Dataset clean;
  Dataset noisy;
};
ScenarioData generate_with_noise(const ScenarioSpec& spec, std::uint64_t seed,
                                 const GeneratorParams& params = {});

}  // namespace filterbench
