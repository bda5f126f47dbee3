#include <cstdlib>
#include <cstring>

#include "filterbench/kernels.hpp"

namespace filterbench::kernels {

#if FILTERBENCH_BUILD_AVX2
const KernelSet* avx2_kernels();
#endif
#if FILTERBENCH_BUILD_NEON
const KernelSet* neon_kernels();
#endif

namespace {

bool cpu_has_avx2() {
#if FILTERBENCH_BUILD_AVX2
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

std::vector<const KernelSet*> detect() {
  std::vector<const KernelSet*> sets;
  sets.push_back(&scalar());
#if FILTERBENCH_BUILD_AVX2
  if (cpu_has_avx2()) sets.push_back(avx2_kernels());
#endif
#if FILTERBENCH_BUILD_NEON
  sets.push_back(neon_kernels());
#endif
  return sets;
}

const KernelSet* select() {
  const auto sets = detect();
  if (const char* want = std::getenv("FILTERBENCH_SIMD")) {
    for (const auto* s : sets)
      if (std::strcmp(s->name, want) == 0) return s;
    return &scalar();
  }
  return sets.back();
}

}  // namespace

std::vector<const KernelSet*> available() {
  static const std::vector<const KernelSet*> sets = detect();
  return sets;
}

const KernelSet& active() {
  static const KernelSet* chosen = select();
  return *chosen;
}

}  // namespace filterbench::kernels
