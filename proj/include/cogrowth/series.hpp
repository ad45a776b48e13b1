#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "cogrowth/groups.hpp"

namespace cogrowth {

enum class SeriesKind { Returns, Cogrowth };

/// Exact coefficients indexed by length from 0.
struct Series {
  SeriesKind kind = SeriesKind::Returns;
  GroupId group;
  /// k; the transforms depend on the 2k-letter alphabet.
  int generators = 2;
  std::vector<BigInt> coefficients;

  std::size_t size() const noexcept { return coefficients.size(); }
};

/// r_n for n <= max_len: walks over the 2k letters evaluating to the
/// identity. Counted on the ball of radius ceil(max_len/2), dropping walks
/// that can no longer get home in time.
Series count_returns(const Group& g, int max_len, std::size_t vertex_budget = 20'000'000);

/// p_n for n <= max_len: freely reduced words evaluating to the identity.
Series count_cogrowth(const Group& g, int max_len, std::size_t vertex_budget = 20'000'000);

/// C(z) = (1-z^2)/(1+qz^2) R(z/(1+qz^2)) with q = 2k-1, same length as r.
Series cogrowth_from_returns(const Series& r);

/// Inverse substitution: with z(w) = (1 - sqrt(1-4q w^2))/(2q w),
/// R(w) = C(z) (1+qz^2)/(1-z^2).
Series returns_from_cogrowth(const Series& c);

/// Lower bound on the return growth rate implied by a cogrowth bound:
/// (a^2+q)/a for a >= sqrt(q), else the branch point 2 sqrt(q).
/// Throws std::domain_error unless 0 < alpha <= q.
double transfer_rho(double alpha, int generators = 2);

/// CSV "n,<kind>" with exact decimal integers.
void write_series_csv(const Series& s, std::ostream& out);

/// Side-by-side columns, one per series; shorter columns are left blank.
void write_series_table(std::span<const Series> columns, std::ostream& out);

}  // namespace cogrowth
