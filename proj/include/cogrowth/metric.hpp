#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "cogrowth/groups.hpp"

namespace cogrowth {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Word metrics for the families where one is implemented.
std::size_t geodesic_length_F(const ForestDiagram& x);
std::size_t geodesic_length_wreath_line(const LampState<std::int64_t>& x);
std::size_t geodesic_length_wreath_tree(const LampState<FreeWord>& x);
std::size_t geodesic_length_wreath_nested(const LampState<LampState<std::int64_t>>& x);

/// Exact distances on the ball B(radius) found by breadth-first search,
/// together with the Cayley-graph neighbour table restricted to the ball.
struct DistanceTable {
  std::uint32_t radius = 0;
  int alphabet_size = 0;
  /// BFS discovery order; entry 0 is the identity.
  std::vector<Word> witness;
  std::vector<std::uint32_t> distance;
  /// neighbor[v * alphabet_size + s] is the index of v*s, or -1 outside the ball.
  std::vector<std::int32_t> neighbor;
  absl::flat_hash_map<CanonicalKey, std::uint32_t> index;

  std::size_t size() const noexcept { return distance.size(); }
  std::optional<std::uint32_t> lookup(const CanonicalKey& key) const;
  /// Number of elements at each distance 0..radius.
  std::vector<std::size_t> sphere_sizes() const;
  /// CSV rows "key_hex,distance" in BFS order.
  void write_csv(std::ostream& out) const;
};

/// Throws BudgetExceeded once the ball would hold more than `vertex_budget`
/// elements.
DistanceTable bfs_oracle(const Group& g, std::uint32_t radius, std::size_t vertex_budget = 20'000'000);

struct MetricMismatch {
  Word witness;
  std::uint32_t bfs_distance;
  std::size_t metric_value;
};

/// Compares the group's metric against the oracle on every ball element.
/// Returns the mismatches (empty on success).
std::vector<MetricMismatch> check_metric_against_oracle(const Group& g, const DistanceTable& table);

}  // namespace cogrowth
