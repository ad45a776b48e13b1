#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "cogrowth/flatperm.hpp"

using namespace cogrowth;

namespace {

// Exact c_{n,l} by enumerating every word.
std::vector<std::vector<double>> enumerate(const Group& g, int len) {
  std::vector<std::vector<double>> c(len + 1);
  for (int n = 0; n <= len; ++n) c[n].assign(n + 1, 0.0);
  const int k = g.alphabet().size();
  std::vector<std::pair<GroupElement, int>> stack{{identity(g), 0}};
  while (!stack.empty()) {
    auto [x, n] = stack.back();
    stack.pop_back();
    c[n][geodesic_length(g, x)] += 1;
    if (n == len) continue;
    for (int s = 0; s < k; ++s) stack.emplace_back(apply_gen(g, x, static_cast<Symbol>(s)), n + 1);
  }
  return c;
}

}  // namespace

TEST_CASE("Z2 length-2 words") {
  const Group g(GroupId::parse("z2"));
  FlatPermOptions o;
  o.max_len = 2;
  o.tours = 100'000;
  const auto h = run_flatperm(g, o);
  CHECK(std::abs(h.c_hat(2, 0) - 4) < 3 * h.std_error(2, 0));
  CHECK(std::abs(h.c_hat(2, 2) - 12) < 3 * h.std_error(2, 2));
  CHECK(h.c_hat(2, 1) == 0);
  CHECK(h.c_hat(1, 1) == 4);
}

TEST_CASE("estimates agree with enumeration") {
  for (const char* name : {"z2", "zwrz", "thompson"}) {
    CAPTURE(name);
    const Group g(GroupId::parse(name));
    FlatPermOptions o;
    o.max_len = 6;
    o.tours = 50'000;
    o.seed = 11;
    const auto h = run_flatperm(g, o);
    const auto exact = enumerate(g, 6);
    for (int n = 0; n <= 6; ++n) {
      double total = 0;
      for (int l = 0; l <= n; ++l) {
        total += h.fraction(n, l);
        if (exact[n][l] == 0) {
          CHECK(h.visit_count[n][l] == 0);
          continue;
        }
        CAPTURE(n);
        CAPTURE(l);
        CHECK(std::abs(h.c_hat(n, l) - exact[n][l]) <= 3 * h.std_error(n, l) + 1e-9 * exact[n][l]);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(0.05));
    }
  }
}

TEST_CASE("fixed seed and worker count reproduce the histogram") {
  const Group g(GroupId::parse("zwrz"));
  FlatPermOptions o;
  o.max_len = 10;
  o.tours = 2000;
  o.workers = 2;
  const auto a = run_flatperm(g, o), b = run_flatperm(g, o);
  CHECK(a.weight_sum == b.weight_sum);
  CHECK(a.visit_count == b.visit_count);
  CHECK(a.tours == 2000);
}

TEST_CASE("resume merges an earlier run") {
  const Group g(GroupId::parse("z2"));
  FlatPermOptions o;
  o.max_len = 4;
  o.tours = 1000;
  const auto first = run_flatperm(g, o);
  std::stringstream buf;
  save_histogram(first, buf);
  const auto loaded = load_histogram(buf);
  CHECK(loaded.weight_sum == first.weight_sum);
  const auto second = run_flatperm(g, o, &loaded);
  CHECK(second.tours == 2000);
  CHECK(second.runs == 2);
  CHECK(second.weight_sum[4][0] != 2 * first.weight_sum[4][0]);  // fresh streams
}

TEST_CASE("groups without a metric are rejected") {
  FlatPermOptions o;
  CHECK_THROWS_AS(run_flatperm(Group(GroupId::parse("bs:1:2")), o), MetricUnavailable);
  CHECK_THROWS_AS(run_simple_sampling(Group(GroupId::parse("bs:1:2")), 4, 4, 1), MetricUnavailable);
}

TEST_CASE("normalized distribution") {
  CHECK(normalize_distribution(HistogramEstimate(4, 4)).empty());
  HistogramEstimate h(2, 4);
  h.tours = 16;
  h.weight_sum[2][0] = 4;
  h.weight_sum[2][2] = 12;
  h.visit_count[2][0] = h.visit_count[2][2] = 1;
  const auto rows = normalize_distribution(h);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].value == doctest::Approx(4.0 / 16 * std::sqrt(2.0)));
  CHECK(rows[1].value == doctest::Approx(12.0 / 16 * std::sqrt(2.0)));
}

TEST_CASE("free group escape matches the exact reflected walk") {
  // distance from the root of the 4-regular tree after n random steps
  const int len = 64;
  std::vector<double> p(len + 2, 0.0);
  p[0] = 1;
  for (int n = 0; n < len; ++n) {
    std::vector<double> q(len + 2, 0.0);
    q[1] += p[0];
    for (int d = 1; d <= n; ++d) {
      q[d + 1] += 0.75 * p[d];
      q[d - 1] += 0.25 * p[d];
    }
    p = q;
  }
  double mean = 0;
  for (int d = 0; d <= len; ++d) mean += d * p[d];
  const auto pts = run_simple_sampling(Group(GroupId::parse("f2")), 4000, len, 5, {len});
  REQUIRE(pts.size() == 1);
  CHECK(std::abs(pts[0].mean - mean) < 3 * pts[0].std_error);
}

TEST_CASE("simple sampling is independent of thread scheduling") {
  const Group g(GroupId::parse("thompson"));
  const auto a = run_simple_sampling(g, 32, 256, 9);
  const auto b = run_simple_sampling(g, 32, 256, 9);
  REQUIRE(a.size() == 9);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].mean == b[i].mean);
  CHECK(a.back().n == 256);
  for (const auto& p : a) CHECK(p.mean <= static_cast<double>(p.n));
}
