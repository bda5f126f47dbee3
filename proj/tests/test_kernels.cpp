#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "filterbench/kernels.hpp"
#include "filterbench/rng.hpp"

using namespace filterbench;

namespace {

std::vector<double> random_vec(std::size_t n, Rng& rng, double lo = -10.0, double hi = 10.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

bool close_rel(double a, double b, double tol) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
  return std::fabs(a - b) <= tol * scale;
}

}  // namespace

TEST_CASE("kernel sets: every compiled variant matches the scalar reference") {
  const auto sets = kernels::available();
  REQUIRE(!sets.empty());
  CHECK(std::string(sets.front()->name) == "scalar");
  INFO("active set: " << kernels::active().name);

  Rng rng(2024);
  const std::size_t sizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 31, 64, 100, 1037};
  const auto& ref = kernels::scalar();

  for (const auto* set : sets) {
    CAPTURE(set->name);
    for (std::size_t n : sizes) {
      const auto a = random_vec(n, rng);
      const auto b = random_vec(n, rng);
      auto invr = random_vec(n, rng, 0.01, 2.0);

      CHECK(close_rel(set->sum(a.data(), n), ref.sum(a.data(), n), 1e-12));
      CHECK(close_rel(set->sum_sq(a.data(), n), ref.sum_sq(a.data(), n), 1e-12));
      CHECK(close_rel(set->dot(a.data(), b.data(), n), ref.dot(a.data(), b.data(), n),
                      1e-12));
      CHECK(close_rel(set->manhattan(a.data(), b.data(), invr.data(), n),
                      ref.manhattan(a.data(), b.data(), invr.data(), n), 1e-12));
      CHECK(close_rel(set->euclidean_sq(a.data(), b.data(), invr.data(), n),
                      ref.euclidean_sq(a.data(), b.data(), invr.data(), n), 1e-12));

      // elementwise update: bitwise identical to the scalar route
      auto acc1 = random_vec(n, rng), acc2 = acc1;
      set->absdiff_scaled_add(acc1.data(), a.data(), b.data(), invr.data(), 0.37, n);
      ref.absdiff_scaled_add(acc2.data(), a.data(), b.data(), invr.data(), 0.37, n);
      for (std::size_t i = 0; i < n; ++i) CHECK(acc1[i] == acc2[i]);
    }
  }
}

TEST_CASE("kernels: hand values") {
  const double a[4] = {1.0, 2.0, 3.0, 4.0};
  const double b[4] = {2.0, 0.0, 3.0, 1.0};
  const double invr[4] = {1.0, 0.5, 2.0, 1.0};
  const auto& k = kernels::active();
  CHECK(k.sum(a, 4) == 10.0);
  CHECK(k.sum_sq(a, 4) == 30.0);
  CHECK(k.dot(a, b, 4) == doctest::Approx(15.0));
  // |1-2|*1 + |2-0|*.5 + 0 + |4-1|*1 = 5
  CHECK(k.manhattan(a, b, invr, 4) == doctest::Approx(5.0));
  CHECK(k.euclidean_sq(a, b, invr, 4) == doctest::Approx(1.0 + 1.0 + 0.0 + 9.0));
}
