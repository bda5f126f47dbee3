#include <arm_neon.h>

#include <cmath>

#include "filterbench/kernels.hpp"

// NEON (2-lane double) variants; same accumulation discipline as the AVX2
// set: plain mul+add, scalar tails.

namespace filterbench::kernels {

namespace {

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += x[i];
  return s;
}

double sum_sq_neon(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x + i);
    acc = vaddq_f64(acc, vmulq_f64(v, v));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double manhattan_neon(const double* a, const double* b, const double* inv_range,
                      std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vaddq_f64(acc, vmulq_f64(d, vld1q_f64(inv_range + i)));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]) * inv_range[i];
  return s;
}

double euclidean_sq_neon(const double* a, const double* b, const double* inv_range,
                         std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vmulq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)),
                                    vld1q_f64(inv_range + i));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double d = (a[i] - b[i]) * inv_range[i];
    s += d * d;
  }
  return s;
}

void absdiff_scaled_add_neon(double* acc, const double* a, const double* b,
                             const double* inv_range, double w, std::size_t n) {
  const float64x2_t vw = vdupq_n_f64(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t t = vmulq_f64(vmulq_f64(d, vld1q_f64(inv_range + i)), vw);
    vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), t));
  }
  for (; i < n; ++i) acc[i] += std::fabs(a[i] - b[i]) * inv_range[i] * w;
}

}  // namespace

const KernelSet* neon_kernels() {
  static const KernelSet set{
      "neon",        sum_neon,          sum_sq_neon,
      dot_neon,      manhattan_neon,    euclidean_sq_neon,
      absdiff_scaled_add_neon,
  };
  return &set;
}

}  // namespace filterbench::kernels
