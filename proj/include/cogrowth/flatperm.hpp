#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cogrowth/groups.hpp"

namespace cogrowth {

/// Flat-histogram weights by word length n and geodesic length l <= n.
struct HistogramEstimate {
  int max_len = 0;
  int alphabet_size = 0;
  std::uint64_t tours = 0;
  /// Number of independent runs merged into this histogram (each run uses
  /// its own RNG streams).
  std::uint64_t runs = 0;
  std::vector<std::vector<double>> weight_sum;
  /// Sum over tours of (that tour's weight in the bin)^2, for error bars.
  std::vector<std::vector<double>> weight_sq_sum;
  std::vector<std::vector<std::uint64_t>> visit_count;

  HistogramEstimate() = default;
  HistogramEstimate(int max_len, int alphabet_size);

  /// Estimated number of length-n words of geodesic length l.
  double c_hat(int n, int l) const;
  double std_error(int n, int l) const;
  /// Estimate divided by (2k)^n.
  double fraction(int n, int l) const;
  /// Elementwise sum; both must have the same shape.
  void merge(const HistogramEstimate& other);
};

struct FlatPermOptions {
  int max_len = 16;
  std::uint64_t tours = 100'000;
  std::uint64_t seed = 1;
  int workers = 1;
  /// Ratio r = W * tours / weight_sum[n][l] below which the sample is pruned
  /// with probability 1/2 (else its weight doubles) ...
  double prune_below = 0.5;
  /// ... and above which it splits into `copies` samples of weight W/copies.
  double enrich_above = 2.0;
  int copies = 2;
};

/// Pruned-enriched flat-histogram sampling of random words. Each worker runs
/// its share of the tours depth-first with its own RNG stream and histogram;
/// the histograms are summed at the end. Throws MetricUnavailable when the
/// group has no word metric. A nonempty `resume` is merged into the result
/// and shifts the RNG streams so the new tours are independent of it.
HistogramEstimate run_flatperm(const Group& g, const FlatPermOptions& opts, const HistogramEstimate* resume = nullptr);

struct EscapePoint {
  std::size_t n = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Independent uniform random words of length max_len; the geodesic length
/// of each prefix of length n in `record_at` (default: powers of two and
/// max_len) is averaged across words. Words run in parallel; word i always
/// uses RNG stream i, so the result does not depend on the thread count.
std::vector<EscapePoint> run_simple_sampling(const Group& g, std::size_t num_words, std::size_t max_len,
                                             std::uint64_t seed, std::vector<std::size_t> record_at = {});

struct NormalizedRow {
  int n = 0;
  int l = 0;
  double value = 0.0;  // c_hat (2k)^-n sqrt(n)
};

std::vector<NormalizedRow> normalize_distribution(const HistogramEstimate& h);

/// CSV: n, l, weight_sum, visits, c_hat, std_error, normalized.
void write_histogram_csv(const HistogramEstimate& h, std::ostream& out);
void write_escape_csv(const std::vector<EscapePoint>& points, std::ostream& out);

/// JSON resume file holding the raw accumulators.
void save_histogram(const HistogramEstimate& h, std::ostream& out);
HistogramEstimate load_histogram(std::istream& in);

}  // namespace cogrowth
