#include "cogrowth/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cogrowth {

namespace {

inline double row_sum(const SparseAdjacency& a, std::size_t i, std::size_t n, const double* x) {
  double s = 0.0;
  for (auto e = a.row_start[i]; e < a.row_start[i + 1]; ++e) {
    const auto j = a.column[e];
    if (j >= n) break;  // columns are sorted
    s += x[j];
  }
  return s;
}

std::size_t block_count(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

// Sums the per-block partials in block order.
double combine(const std::vector<double>& partial) {
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

}  // namespace

void spmv_serial(const SparseAdjacency& a, std::size_t n, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = row_sum(a, i, n, x.data());
}

void spmv_omp(const SparseAdjacency& a, std::size_t n, std::span<const double> x, std::span<double> y) {
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static, 4096)
  for (std::ptrdiff_t i = 0; i < rows; ++i) y[i] = row_sum(a, static_cast<std::size_t>(i), n, x.data());
}

double dot_serial(std::span<const double> x, std::span<const double> y) {
  std::vector<double> partial(block_count(x.size()), 0.0);
  for (std::size_t b = 0; b < partial.size(); ++b) {
    const std::size_t end = std::min(x.size(), (b + 1) * kReductionBlock);
    double s = 0.0;
    for (std::size_t i = b * kReductionBlock; i < end; ++i) s += x[i] * y[i];
    partial[b] = s;
  }
  return combine(partial);
}

double dot_omp(std::span<const double> x, std::span<const double> y) {
  std::vector<double> partial(block_count(x.size()), 0.0);
  const auto blocks = static_cast<std::ptrdiff_t>(partial.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = std::min(x.size(), begin + kReductionBlock);
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += x[i] * y[i];
    partial[b] = s;
  }
  return combine(partial);
}

double max_abs_serial(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_omp(std::span<const double> x) {
  double m = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double residual_serial(std::span<const double> y, std::span<const double> x, double lambda) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(y[i] - lambda * x[i]));
  return m;
}

double residual_omp(std::span<const double> y, std::span<const double> x, double lambda) {
  double m = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(y[i] - lambda * x[i]));
  return m;
}

double min_ratio_serial(std::span<const double> y, std::span<const double> x) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0.0) m = std::min(m, y[i] / x[i]);
  return m;
}

double min_ratio_omp(std::span<const double> y, std::span<const double> x) {
  double m = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for reduction(min : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    if (x[i] > 0.0) m = std::min(m, y[i] / x[i]);
  return m;
}

}  // namespace cogrowth
