#include <cmath>

#include "filterbench/kernels.hpp"

namespace filterbench::kernels {

namespace {

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double sum_sq_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double manhattan_scalar(const double* a, const double* b, const double* inv_range,
                        std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]) * inv_range[i];
  return s;
}

double euclidean_sq_scalar(const double* a, const double* b, const double* inv_range,
                           std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (a[i] - b[i]) * inv_range[i];
    s += d * d;
  }
  return s;
}

void absdiff_scaled_add_scalar(double* acc, const double* a, const double* b,
                               const double* inv_range, double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    acc[i] += std::fabs(a[i] - b[i]) * inv_range[i] * w;
}

}  // namespace

const KernelSet& scalar() {
  static const KernelSet set{
      "scalar",        sum_scalar,          sum_sq_scalar,
      dot_scalar,      manhattan_scalar,    euclidean_sq_scalar,
      absdiff_scaled_add_scalar,
  };
  return set;
}

}  // namespace filterbench::kernels
