#include "cogrowth/series.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cogrowth/metric.hpp"

namespace cogrowth {

namespace {

using u128 = unsigned __int128;
using Rational = boost::multiprecision::cpp_rational;
using Poly = std::vector<Rational>;

BigInt to_bigint(u128 x) {
  BigInt out = static_cast<std::uint64_t>(x >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(x);
  return out;
}

// Counts never exceed (2k)^n, so 128 bits hold them while this is true.
void check_width(int letters, int max_len) {
  if (max_len < 0) throw std::invalid_argument("series: negative length");
  if (max_len * std::log2(static_cast<double>(letters)) >= 127.0)
    throw BudgetExceeded("series: counts for length " + std::to_string(max_len) + " overflow 128 bits");
}

DistanceTable ball_for(const Group& g, int max_len, std::size_t budget) {
  return bfs_oracle(g, static_cast<std::uint32_t>((max_len + 1) / 2), budget);
}

// ---- truncated formal power series over the rationals

Poly mul(const Poly& a, const Poly& b, std::size_t m) {
  Poly out(m);
  for (std::size_t i = 0; i < std::min(a.size(), m); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < m; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly inverse(const Poly& a, std::size_t m) {
  if (a.empty() || a[0] == 0) throw std::domain_error("series: inverse of a series without constant term");
  Poly out(m);
  out[0] = 1 / a[0];
  for (std::size_t n = 1; n < m; ++n) {
    Rational s = 0;
    for (std::size_t i = 1; i <= n && i < a.size(); ++i) s += a[i] * out[n - i];
    out[n] = -s / a[0];
  }
  return out;
}

// Square root of a series with constant term 1.
Poly sqrt_series(const Poly& a, std::size_t m) {
  if (a.empty() || a[0] != 1) throw std::domain_error("series: square root needs constant term 1");
  Poly out(m);
  out[0] = 1;
  for (std::size_t n = 1; n < m; ++n) {
    Rational s = n < a.size() ? a[n] : Rational(0);
    for (std::size_t i = 1; i < n; ++i) s -= out[i] * out[n - i];
    out[n] = s / 2;
  }
  return out;
}

// f(u(z)) for u with zero constant term, by Horner's rule.
Poly compose(const Poly& f, const Poly& u, std::size_t m) {
  if (!u.empty() && u[0] != 0) throw std::domain_error("series: substituted series must vanish at 0");
  Poly out(m);
  for (std::size_t k = f.size(); k-- > 0;) {
    out = mul(out, u, m);
    out[0] += f[k];
  }
  return out;
}

Poly to_poly(const std::vector<BigInt>& c) {
  Poly out;
  out.reserve(c.size());
  for (const auto& x : c) out.emplace_back(x);
  return out;
}

std::vector<BigInt> to_integers(const Poly& p) {
  std::vector<BigInt> out;
  out.reserve(p.size());
  for (const auto& x : p) {
    if (boost::multiprecision::denominator(x) != 1)
      throw std::logic_error("series: transform produced a non-integral coefficient");
    out.push_back(boost::multiprecision::numerator(x));
  }
  return out;
}

// 1 + c z^2, truncated.
Poly one_plus_z2(int c, std::size_t m) {
  Poly p(std::max<std::size_t>(m, 3));
  p[0] = 1;
  p[2] = c;
  p.resize(m);
  return p;
}

}  // namespace

Series count_returns(const Group& g, int max_len, std::size_t vertex_budget) {
  const int letters = g.alphabet().size();
  check_width(letters, max_len);
  const auto ball = ball_for(g, max_len, vertex_budget);
  const std::size_t n = ball.size();

  Series out{SeriesKind::Returns, g.id(), g.alphabet().generators(), {}};
  std::vector<u128> cur(n, 0), next(n, 0);
  cur[0] = 1;
  for (int m = 0; m <= max_len; ++m) {
    out.coefficients.push_back(to_bigint(cur[0]));
    if (m == max_len) break;
    const auto reach = static_cast<std::uint32_t>(max_len - m - 1);  // steps left after this one
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (cur[v] == 0) continue;
      for (int s = 0; s < letters; ++s) {
        const auto w = ball.neighbor[v * letters + s];
        if (w >= 0 && ball.distance[w] <= reach) next[w] += cur[v];
      }
    }
    cur.swap(next);
  }
  return out;
}

Series count_cogrowth(const Group& g, int max_len, std::size_t vertex_budget) {
  const int letters = g.alphabet().size();
  check_width(letters, max_len);
  const auto ball = ball_for(g, max_len, vertex_budget);
  const std::size_t n = ball.size();

  Series out{SeriesKind::Cogrowth, g.id(), g.alphabet().generators(), {}};
  out.coefficients.push_back(1);
  if (max_len == 0) return out;

  // State v*letters + s: at element v, last letter s.
  std::vector<u128> cur(n * letters, 0), next(n * letters, 0);
  for (int s = 0; s < letters; ++s) {
    const auto w = ball.neighbor[s];
    if (w >= 0 && ball.distance[w] <= static_cast<std::uint32_t>(max_len - 1)) cur[w * letters + s] = 1;
  }
  for (int m = 1; m <= max_len; ++m) {
    u128 home = 0;
    for (int s = 0; s < letters; ++s) home += cur[s];
    out.coefficients.push_back(to_bigint(home));
    if (m == max_len) break;
    const auto reach = static_cast<std::uint32_t>(max_len - m - 1);
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t v = 0; v < n; ++v) {
      for (int last = 0; last < letters; ++last) {
        const u128 c = cur[v * letters + last];
        if (c == 0) continue;
        for (int s = 0; s < letters; ++s) {
          if (s == inverse_symbol(static_cast<Symbol>(last))) continue;
          const auto w = ball.neighbor[v * letters + s];
          if (w >= 0 && ball.distance[w] <= reach) next[static_cast<std::size_t>(w) * letters + s] += c;
        }
      }
    }
    cur.swap(next);
  }
  return out;
}

Series cogrowth_from_returns(const Series& r) {
  const std::size_t m = r.size();
  Series out{SeriesKind::Cogrowth, r.group, r.generators, {}};
  if (m == 0) return out;
  const int q = 2 * r.generators - 1;
  const Poly damp = inverse(one_plus_z2(q, m), m);  // 1/(1+qz^2)
  Poly z(m);
  if (m > 1) z[1] = 1;
  const Poly u = mul(z, damp, m);
  Poly f = mul(one_plus_z2(-1, m), damp, m);
  out.coefficients = to_integers(mul(f, compose(to_poly(r.coefficients), u, m), m));
  return out;
}

Series returns_from_cogrowth(const Series& c) {
  const std::size_t m = c.size();
  Series out{SeriesKind::Returns, c.group, c.generators, {}};
  if (m == 0) return out;
  const int q = 2 * c.generators - 1;
  // z(w) = (1 - sqrt(1 - 4q w^2)) / (2q w): needs one extra term before the shift.
  const Poly s = sqrt_series(one_plus_z2(-4 * q, m + 1), m + 1);
  Poly z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = -s[i + 1] / (2 * q);  // s[0] = 1 cancels
  const Poly z2 = mul(z, z, m);
  Poly num(m), den(m);
  for (std::size_t i = 0; i < m; ++i) {
    num[i] = q * z2[i];
    den[i] = -z2[i];
  }
  num[0] += 1;
  den[0] += 1;
  const Poly factor = mul(num, inverse(den, m), m);
  out.coefficients = to_integers(mul(compose(to_poly(c.coefficients), z, m), factor, m));
  return out;
}

double transfer_rho(double alpha, int generators) {
  const double q = 2.0 * generators - 1.0;
  if (!(alpha > 0.0) || alpha > q) throw std::domain_error("transfer_rho: alpha outside (0, 2k-1]");
  if (alpha < std::sqrt(q)) return 2.0 * std::sqrt(q);
  return (alpha * alpha + q) / alpha;
}

void write_series_csv(const Series& s, std::ostream& out) {
  out << "n," << (s.kind == SeriesKind::Returns ? "returns" : "cogrowth") << '\n';
  for (std::size_t n = 0; n < s.size(); ++n) out << n << ',' << s.coefficients[n] << '\n';
}

void write_series_table(std::span<const Series> columns, std::ostream& out) {
  out << 'n';
  std::size_t rows = 0;
  for (const auto& c : columns) {
    out << ',' << c.group.to_string() << (c.kind == SeriesKind::Returns ? ":returns" : ":cogrowth");
    rows = std::max(rows, c.size());
  }
  out << '\n';
  for (std::size_t n = 0; n < rows; ++n) {
    out << n;
    for (const auto& c : columns) {
      out << ',';
      if (n < c.size()) out << c.coefficients[n];
    }
    out << '\n';
  }
}

}  // namespace cogrowth
