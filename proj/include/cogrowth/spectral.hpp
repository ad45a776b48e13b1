#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "cogrowth/cayley.hpp"
#include "cogrowth/kernels.hpp"

namespace cogrowth {

struct PowerOptions {
  double tol = 1e-10;
  std::size_t max_iterations = 100'000;
  Backend backend = Backend::OpenMP;
};

struct EigenResult {
  /// Rayleigh-quotient estimate of the dominant eigenvalue of A.
  double value = 0.0;
  /// Collatz-Wielandt lower bound on the spectral radius of A, rounded down.
  double certified = 0.0;
  std::size_t iterations = 0;
  /// ||Bv - mu v||_inf / ||v||_inf for the iterated operator B (A, A^2 or
  /// A + I) and its Rayleigh quotient mu.
  double residual = 0.0;
  bool converged = false;
  /// Nonnegative, max entry 1.
  std::vector<double> vector;
};

/// Dominant eigenvalue of the leading n x n block (n = 0: whole graph).
/// Period 2 iterates A^2 and takes square roots; period 1 iterates A + I so
/// the iteration cannot oscillate on a still-bipartite prefix. `start` (if
/// nonempty) seeds the iteration and must have n entries.
EigenResult dominant_eigenvalue(const TruncatedGraph& graph, int period, const PowerOptions& opts = {},
                                std::size_t n = 0, std::vector<double> start = {});

struct LadderPoint {
  std::size_t n = 0;
  /// Running maximum of the certified bounds up to this prefix.
  double certified = 0.0;
  double rayleigh = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

using Ladder = std::vector<LadderPoint>;

/// Geometric grid with `per_decade` points per factor of 10 between lo and
/// hi (both included), rounded to distinct integers.
std::vector<std::size_t> geometric_checkpoints(std::size_t lo, std::size_t hi, int per_decade = 50);

/// Dominant eigenvalues of nested prefixes, each warm-started from the
/// previous eigenvector padded with its smallest positive entry.
Ladder eigen_ladder(const TruncatedGraph& graph, const std::vector<std::size_t>& checkpoints, int period,
                    const PowerOptions& opts = {});

/// Certified lower bound on the cogrowth from the reduced-path graph on N
/// states.
double certified_alpha_bound(const Group& g, std::size_t n, const PowerOptions& opts = {});

/// CSV columns: N, 1/log N, alpha_N_certified, alpha_N_rayleigh, residual,
/// iterations.
void write_ladder_csv(const Ladder& ladder, std::ostream& out);

}  // namespace cogrowth
