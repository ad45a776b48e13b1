#include <doctest.h>

#include <cmath>
#include <random>

#include "cogrowth/kernels.hpp"

using namespace cogrowth;

namespace {

SparseAdjacency random_graph(std::size_t n, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
  std::vector<std::int32_t> transition(n * degree);
  for (auto& t : transition) t = rng() % 5 == 0 ? -1 : pick(rng);
  return adjacency_from_transitions(transition, degree);
}

}  // namespace

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  const std::size_t n = 20'000;
  const auto a = random_graph(n, 4, 3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n), y1(n), y2(n);
  for (auto& v : x) v = u(rng);
  for (std::size_t prefix : {n, n / 3}) {
    spmv_serial(a, prefix, x, y1);
    spmv_omp(a, prefix, x, y2);
    for (std::size_t i = 0; i < prefix; ++i) REQUIRE(y1[i] == y2[i]);
  }
  CHECK(dot_serial(x, y1) == dot_omp(x, y1));
  CHECK(max_abs_serial(y1) == max_abs_omp(y1));
  CHECK(residual_serial(y1, x, 2.5) == residual_omp(y1, x, 2.5));
  CHECK(min_ratio_serial(y1, x) == min_ratio_omp(y1, x));
}

TEST_CASE("spmv on a tiny graph") {
  // 0 -> 1, 0 -> 2, 1 -> 2, 2 -> 0
  const auto a = adjacency_from_transitions({1, 2, 2, -1, 0, -1}, 2);
  std::vector<double> x{1, 10, 100}, y(3);
  spmv_serial(a, 3, x, y);
  CHECK(y == std::vector<double>{110, 100, 1});
  spmv_serial(a, 2, x, y);  // leading 2x2 block
  CHECK(y[0] == 10);
  CHECK(y[1] == 0);
}

TEST_CASE("reductions") {
  std::vector<double> x{1, -3, 2}, y{2, 6, 0};
  CHECK(dot_serial(x, y) == -16);
  CHECK(max_abs_serial(x) == 3);
  CHECK(residual_serial(y, x, 2) == 12);
  std::vector<double> pos{1, 0, 2};
  CHECK(min_ratio_serial(y, pos) == 0);  // 0/2; zero entry skipped
  CHECK(std::isinf(min_ratio_serial(y, std::vector<double>{0, 0, 0})));
}
