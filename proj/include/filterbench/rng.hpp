#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace filterbench {

// Deterministic pseudo-random generator pinned for the whole project:
// xoshiro256++ seeded through splitmix64. The raw 64-bit stream is
// bit-identical on every platform; see docs/determinism notes in README.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // uniform in [0,1), 53-bit mantissa taken from the top of next_u64()
  double next_double();

  // uniform integer in [0, bound), bounded rejection sampling
  std::uint64_t next_below(std::uint64_t bound);

  double uniform(double lo, double hi);

  // standard normal via Marsaglia's polar method
  double gaussian();

  // partial Fisher-Yates; permutes v in place
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

using SeedTag = std::variant<std::string, std::int64_t>;

// Stable seed derivation: folds tags into the master seed with
// splitmix64/FNV-1a so every (scenario, method, repeat, fold) cell gets an
// independent reproducible stream. Pure function of its inputs.
std::uint64_t derive_seed(std::uint64_t master, const std::vector<SeedTag>& tags);

}  // namespace filterbench
