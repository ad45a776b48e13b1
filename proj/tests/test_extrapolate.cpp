#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cogrowth/extrapolate.hpp"

using namespace cogrowth;

namespace {

std::vector<Point> model(double a, double l, double delta) {
  std::vector<Point> pts;
  for (double n = 100; n <= 1e7; n *= 1.2) pts.push_back({n, a + l * std::pow(std::log(n), -delta)});
  return pts;
}

}  // namespace

TEST_CASE("exact model recovery at fixed delta") {
  const auto f = fit_fixed_delta(model(3.0, -2.0, 1.0), 1.0);
  CHECK(std::abs(f.intercept - 3.0) < 1e-10);
  CHECK(std::abs(f.slope + 2.0) < 1e-10);
  CHECK(std::abs(f.r_squared - 1.0) < 1e-10);
  const auto g = fit_fixed_delta(model(2.6, 0.5, 1.5), 1.5);
  CHECK(std::abs(g.intercept - 2.6) < 1e-10);
  CHECK(std::abs(g.slope - 0.5) < 1e-10);
}

TEST_CASE("delta scan finds the generating exponent") {
  const auto pts = model(2.68, -1.3, 2.5);
  const auto fit = scan_delta(pts, default_delta_grid());
  CHECK(std::abs(fit.delta - 2.5) < 0.05 + 1e-9);
  CHECK(std::abs(fit.alpha_inf - 2.68) < 1e-8);
  CHECK(fit.delta_band.first <= fit.delta);
  CHECK(fit.delta_band.second >= fit.delta);
  CHECK(fit.value_band.first <= fit.alpha_inf);
  CHECK(fit.value_band.second >= fit.alpha_inf);
  CHECK(fit.points_used == pts.size());
  CHECK(fit.grid.size() == default_delta_grid().size());
}

TEST_CASE("ties go to the smaller delta") {
  const std::vector<Point> flat{{10, 1.0}, {100, 1.0}, {1000, 1.0}};
  const std::vector<double> grid{2.0, 1.0};
  const std::vector<double> ascending{1.0, 2.0};
  CHECK(scan_delta(flat, ascending).delta == 1.0);
  // on a descending grid the first (larger) entry wins, so callers sort
  CHECK(scan_delta(flat, grid).delta == 2.0);
}

TEST_CASE("affine equivariance") {
  const auto pts = model(2.2, 0.7, 1.0);
  auto scaled = pts;
  for (auto& p : scaled) p.y *= 3.0;
  const auto a = fit_fixed_delta(pts, 1.3), b = fit_fixed_delta(scaled, 1.3);
  CHECK(b.intercept == doctest::Approx(3.0 * a.intercept).epsilon(1e-12));
  CHECK(b.slope == doctest::Approx(3.0 * a.slope).epsilon(1e-12));
}

TEST_CASE("escape fit") {
  std::vector<Point> pts;
  for (double n = 16; n <= 16384; n *= 2) pts.push_back({n, 0.28 * n + 2.0 * std::sqrt(n)});
  const auto f = fit_escape(pts, 0.5);
  CHECK(std::abs(f.a - 0.28) < 1e-10);
  CHECK(std::abs(f.b - 2.0) < 1e-8);
  // delta = 0: ordinary regression with intercept
  std::vector<Point> line{{1, 3}, {2, 5}, {3, 6}, {4, 9}};
  const auto g = fit_escape(line, 0.0);
  CHECK(g.a == doctest::Approx(1.9));
  CHECK(g.b == doctest::Approx(1.0));
}

TEST_CASE("degenerate inputs") {
  const std::vector<Point> two{{10, 1}, {20, 2}};
  CHECK_THROWS_AS(fit_fixed_delta(two, 1.0), DegenerateFit);
  const std::vector<Point> same{{10, 1}, {10, 2}, {10, 3}};
  CHECK_THROWS_AS(fit_fixed_delta(same, 1.0), DegenerateFit);
  CHECK_THROWS_AS(fit_escape(model(1, 1, 1), 1.0), DegenerateFit);
  CHECK_THROWS_AS(scan_delta(model(1, 1, 1), std::vector<double>{}), DegenerateFit);
}

TEST_CASE("csv input and json output") {
  std::istringstream in("# comment\nN,inv_log_N,alpha\n10,0.4,1.5\n100,nan,1.7\n1000,0.1,1.8\n");
  const auto pts = read_points_csv(in, "N", "alpha");
  REQUIRE(pts.size() == 3);
  CHECK(pts[1].x == 100);
  CHECK(pts[2].y == 1.8);
  std::istringstream bad("N,x\n1,2\n");
  CHECK_THROWS(read_points_csv(bad, "N", "alpha"));

  const auto fit = scan_delta(model(3.0, -1.0, 1.0), default_delta_grid());
  std::ostringstream out;
  write_fit_json(fit, digest(pts), out);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j.at("alpha_inf").get<double>() == doctest::Approx(3.0));
  CHECK(j.at("input_digest").get<std::string>().size() == 16);
  CHECK(digest(pts) != digest(model(3.0, -1.0, 1.0)));
}
