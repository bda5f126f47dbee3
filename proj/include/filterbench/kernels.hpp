#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace filterbench::kernels {

// Data-parallel inner loops behind the hot paths (Relief distances, variance
// and dot reductions). The scalar set is the reference; vector sets must be
// equivalence-tested against it (see tests/test_kernels.cpp). Reductions may
// reassociate, so vector results can differ from scalar in the last ulps;
// the elementwise absdiff_scaled_add is bit-identical by construction.
struct KernelSet {
  const char* name;
  double (*sum)(const double* x, std::size_t n);
  double (*sum_sq)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_j |a_j - b_j| * inv_range_j
  double (*manhattan)(const double* a, const double* b, const double* inv_range,
                      std::size_t n);
  // sum_j ((a_j - b_j) * inv_range_j)^2
  double (*euclidean_sq)(const double* a, const double* b, const double* inv_range,
                         std::size_t n);
  // acc_j += |a_j - b_j| * inv_range_j * w
  void (*absdiff_scaled_add)(double* acc, const double* a, const double* b,
                             const double* inv_range, double w, std::size_t n);
};

const KernelSet& scalar();

// All kernel sets compiled in and usable on this CPU (scalar first).
std::vector<const KernelSet*> available();

// Active set: best available, unless FILTERBENCH_SIMD={scalar,avx2,neon}
// forces one. Resolved once per process.
const KernelSet& active();

}  // namespace filterbench::kernels
