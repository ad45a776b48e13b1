#include "cogrowth/extrapolate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace cogrowth {

namespace {

// Least squares y ~ X c by column-pivoting QR; R^2 against the mean of y.
std::pair<Eigen::VectorXd, double> least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const auto qr = x.colPivHouseholderQr();
  if (qr.rank() < x.cols()) throw DegenerateFit("fit: design matrix is rank deficient");
  Eigen::VectorXd c = qr.solve(y);
  const double ss_res = (y - x * c).squaredNorm();
  const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
  double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  return {std::move(c), std::clamp(r2, 0.0, 1.0)};
}

}  // namespace

LinearFit fit_fixed_delta(std::span<const Point> points, double delta) {
  if (points.size() < 3) throw DegenerateFit("fit: need at least 3 points");
  if (!(delta > 0.0)) throw DegenerateFit("fit: delta must be positive");
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd x(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    if (!(p.x >= 2.0)) throw DegenerateFit("fit: every N must be at least 2");
    x(i, 0) = 1.0;
    x(i, 1) = std::pow(std::log(p.x), -delta);
    y(i) = p.y;
  }
  if (x.col(1).maxCoeff() == x.col(1).minCoeff()) throw DegenerateFit("fit: all predictors are equal");
  const auto [c, r2] = least_squares(x, y);
  return {c(0), c(1), r2};
}

std::vector<double> default_delta_grid() {
  std::vector<double> grid;
  for (int i = 2; i <= 240; ++i) grid.push_back(0.05 * i);
  return grid;
}

FitResult scan_delta(std::span<const Point> points, std::span<const double> delta_grid, double band_fraction) {
  if (delta_grid.empty()) throw DegenerateFit("scan: empty delta grid");
  FitResult out;
  out.points_used = points.size();
  std::size_t best = 0;
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    const auto f = fit_fixed_delta(points, delta_grid[i]);
    out.grid.push_back({delta_grid[i], f.r_squared, f.intercept});
    if (f.r_squared > out.grid[best].r_squared) best = i;
  }
  // Ties keep the first hit, i.e. the smaller delta on an ascending grid.
  const auto& opt = out.grid[best];
  const auto f = fit_fixed_delta(points, opt.delta);
  out.alpha_inf = f.intercept;
  out.lambda = f.slope;
  out.delta = opt.delta;
  out.r_squared = opt.r_squared;

  const double floor = (1.0 - band_fraction) * opt.r_squared;
  std::size_t lo = best, hi = best;
  while (lo > 0 && out.grid[lo - 1].r_squared >= floor) --lo;
  while (hi + 1 < out.grid.size() && out.grid[hi + 1].r_squared >= floor) ++hi;
  out.delta_band = {out.grid[lo].delta, out.grid[hi].delta};
  out.value_band = {opt.alpha_inf, opt.alpha_inf};
  for (std::size_t i = lo; i <= hi; ++i) {
    out.value_band.first = std::min(out.value_band.first, out.grid[i].alpha_inf);
    out.value_band.second = std::max(out.value_band.second, out.grid[i].alpha_inf);
  }
  return out;
}

EscapeFit fit_escape(std::span<const Point> points, double delta) {
  if (points.size() < 3) throw DegenerateFit("escape fit: need at least 3 points");
  if (!(delta >= 0.0 && delta < 1.0)) throw DegenerateFit("escape fit: delta must lie in [0, 1)");
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd x(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    if (!(p.x > 0.0)) throw DegenerateFit("escape fit: lengths must be positive");
    x(i, 0) = p.x;
    x(i, 1) = std::pow(p.x, delta);
    y(i) = p.y;
  }
  const auto [c, r2] = least_squares(x, y);
  return {c(0), c(1), r2};
}

std::string digest(std::span<const Point> points) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i, bits >>= 8) {
      h ^= bits & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& p : points) {
    mix(p.x);
    mix(p.y);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::ordered_json fit_to_json(const FitResult& fit, const std::string& input_digest) {
  nlohmann::ordered_json j;
  j["alpha_inf"] = fit.alpha_inf;
  j["lambda"] = fit.lambda;
  j["delta"] = fit.delta;
  j["r_squared"] = fit.r_squared;
  j["delta_band"] = {fit.delta_band.first, fit.delta_band.second};
  j["value_band"] = {fit.value_band.first, fit.value_band.second};
  j["points_used"] = fit.points_used;
  j["input_digest"] = input_digest;
  return j;
}

void write_fit_json(const FitResult& fit, const std::string& input_digest, std::ostream& out) {
  out << fit_to_json(fit, input_digest).dump(2) << '\n';
}

void write_grid_csv(const FitResult& fit, std::ostream& out) {
  out << "delta,r_squared,alpha_inf\n";
  char buf[96];
  for (const auto& row : fit.grid) {
    std::snprintf(buf, sizeof buf, "%.2f,%.15g,%.15g\n", row.delta, row.r_squared, row.alpha_inf);
    out << buf;
  }
}

std::vector<Point> read_points_csv(std::istream& in, const std::string& x_column, const std::string& y_column) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) header.push_back(cell);
    break;
  }
  const auto find = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::invalid_argument("csv: no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = find(x_column), yi = find(y_column);
  std::vector<Point> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() <= std::max(xi, yi)) throw std::invalid_argument("csv: short row: " + line);
    const Point p{std::stod(cells[xi]), std::stod(cells[yi])};
    if (std::isfinite(p.x) && std::isfinite(p.y)) out.push_back(p);
  }
  return out;
}

}  // namespace cogrowth
