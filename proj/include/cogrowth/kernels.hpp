#pragma once

#include <cstddef>
#include <span>

#include "cogrowth/cayley.hpp"

namespace cogrowth {

/// Which implementation of the hot loops to run. Both give bit-identical
/// results: rows are summed in a fixed order and reductions use fixed blocks.
enum class Backend { Serial, OpenMP };

/// Reduction block length; partial sums over these blocks are combined in
/// block order regardless of the thread count.
inline constexpr std::size_t kReductionBlock = 4096;

/// y[i] = sum of x[j] over out-neighbours j < n of vertex i, for i < n (the
/// leading n x n principal submatrix times x).
void spmv_serial(const SparseAdjacency& a, std::size_t n, std::span<const double> x, std::span<double> y);
void spmv_omp(const SparseAdjacency& a, std::size_t n, std::span<const double> x, std::span<double> y);

double dot_serial(std::span<const double> x, std::span<const double> y);
double dot_omp(std::span<const double> x, std::span<const double> y);

double max_abs_serial(std::span<const double> x);
double max_abs_omp(std::span<const double> x);

/// max_i |y[i] - lambda * x[i]|.
double residual_serial(std::span<const double> y, std::span<const double> x, double lambda);
double residual_omp(std::span<const double> y, std::span<const double> x, double lambda);

/// min over x[i] > 0 of y[i] / x[i]; +inf when x has no positive entry.
double min_ratio_serial(std::span<const double> y, std::span<const double> x);
double min_ratio_omp(std::span<const double> y, std::span<const double> x);

inline void spmv(Backend b, const SparseAdjacency& a, std::size_t n, std::span<const double> x, std::span<double> y) {
  b == Backend::Serial ? spmv_serial(a, n, x, y) : spmv_omp(a, n, x, y);
}
inline double dot(Backend b, std::span<const double> x, std::span<const double> y) {
  return b == Backend::Serial ? dot_serial(x, y) : dot_omp(x, y);
}
inline double max_abs(Backend b, std::span<const double> x) {
  return b == Backend::Serial ? max_abs_serial(x) : max_abs_omp(x);
}
inline double residual(Backend b, std::span<const double> y, std::span<const double> x, double lambda) {
  return b == Backend::Serial ? residual_serial(y, x, lambda) : residual_omp(y, x, lambda);
}
inline double min_ratio(Backend b, std::span<const double> y, std::span<const double> x) {
  return b == Backend::Serial ? min_ratio_serial(y, x) : min_ratio_omp(y, x);
}

}  // namespace cogrowth
