#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace cogrowth {

struct Point {
  double x = 0.0;  // N for ladders, n for escape data
  double y = 0.0;
};

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

struct GridRow {
  double delta = 0.0;
  double r_squared = 0.0;
  double alpha_inf = 0.0;
};

struct FitResult {
  double alpha_inf = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  double r_squared = 0.0;
  std::pair<double, double> delta_band;
  std::pair<double, double> value_band;
  std::size_t points_used = 0;
  std::vector<GridRow> grid;
};

class DegenerateFit : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// OLS of y = alpha_inf + lambda * (log N)^-delta; intercept is alpha_inf.
LinearFit fit_fixed_delta(std::span<const Point> points, double delta);

/// 0.1, 0.15, ..., 12.
std::vector<double> default_delta_grid();

/// Picks the delta with the largest R^2 (ties: smaller delta). The delta
/// band is the connected run of grid points around the optimum with
/// R^2 >= (1 - band_fraction) R^2_opt; value_band spans alpha_inf over it.
FitResult scan_delta(std::span<const Point> points, std::span<const double> delta_grid, double band_fraction = 0.05);

struct EscapeFit {
  double a = 0.0;  // linear rate
  double b = 0.0;  // coefficient of n^delta
  double r_squared = 0.0;
};

/// Least squares of <l> = A n + b n^delta, 0 <= delta < 1.
EscapeFit fit_escape(std::span<const Point> points, double delta);

/// FNV-1a over the points' bit patterns, as 16 hex digits.
std::string digest(std::span<const Point> points);

nlohmann::ordered_json fit_to_json(const FitResult& fit, const std::string& input_digest);
void write_fit_json(const FitResult& fit, const std::string& input_digest, std::ostream& out);
void write_grid_csv(const FitResult& fit, std::ostream& out);

/// Reads (N, value) from a CSV with a header row; '#' lines are skipped.
std::vector<Point> read_points_csv(std::istream& in, const std::string& x_column, const std::string& y_column);

}  // namespace cogrowth
