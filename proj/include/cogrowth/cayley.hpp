#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "cogrowth/groups.hpp"
#include "cogrowth/metric.hpp"

namespace cogrowth {

enum class GraphKind { G, H };

/// Bit-packed words stored back to back (each in Word's own block layout)
/// with an offset table; one word per vertex.
class WordArena {
 public:
  explicit WordArena(int bits_per_symbol = 2) : bits_(bits_per_symbol) {}

  void push_back(const Word& w);
  Word operator[](std::size_t i) const;
  std::size_t size() const noexcept { return lengths_.size(); }
  std::size_t length(std::size_t i) const noexcept { return lengths_[i]; }
  int bits_per_symbol() const noexcept { return bits_; }
  std::size_t bytes() const noexcept { return store_.size() * 8 + offsets_.size() * 8 + lengths_.size() * 2; }

 private:
  int bits_;
  std::vector<std::uint64_t> store_;
  std::vector<std::uint64_t> offsets_{0};  // in blocks
  std::vector<std::uint16_t> lengths_;
};

/// Compressed sparse rows; row i lists the out-neighbours of vertex i in
/// ascending index order.
struct SparseAdjacency {
  std::vector<std::uint64_t> row_start{0};
  std::vector<std::uint32_t> column;

  std::size_t rows() const noexcept { return row_start.size() - 1; }
  std::size_t edges() const noexcept { return column.size(); }
};

/// Prefix of a breadth-first exploration of the Cayley graph (kind G) or of
/// the reduced-path state graph (kind H).
struct TruncatedGraph {
  GroupId group;
  GraphKind kind = GraphKind::G;
  int alphabet_size = 0;
  /// BFS discovery words. For kind H the last letter is the state's symbol;
  /// the root's witness is empty.
  WordArena witness;
  /// BFS depth of each vertex (the witness length).
  std::vector<std::uint16_t> depth;
  /// Vertices whose group element is the identity (just 0 for kind G).
  std::vector<std::uint32_t> identity_states;
  /// transition[v * alphabet_size + s]: the vertex reached from v by letter
  /// s, or -1 when that edge leaves the graph (or backtracks, for kind H).
  std::vector<std::int32_t> transition;
  SparseAdjacency adjacency;
  /// Largest R with the ball B(R) inside the graph's set of group elements.
  int covered_radius = 0;

  std::size_t size() const noexcept { return depth.size(); }
  int max_depth() const noexcept { return depth.empty() ? 0 : depth.back(); }
};

struct BuildLimits {
  std::size_t max_vertices = 10'000'000;
  /// Rough cap on the canonical-key table during construction.
  std::size_t max_key_bytes = std::size_t{4} << 30;
};

TruncatedGraph build_G(const Group& g, std::size_t n, const BuildLimits& limits = {});
TruncatedGraph build_H(const Group& g, std::size_t n, const BuildLimits& limits = {});

/// Reduced-path states over exactly the vertex set of `graph_g`: the root,
/// plus (x, s) for every edge arriving at x by letter s inside the graph.
/// Walks from the root are the freely reduced walks of the G-graph.
TruncatedGraph build_H_over_G(const TruncatedGraph& graph_g);

/// 1 when the generating set admits an odd-length relator, else 2.
int classify_period(const GroupId& id);

/// Exact counts of walks of length 0..max_len from vertex 0 back to an
/// identity state, restricted to the leading `prefix` vertices (0 = all).
std::vector<BigInt> count_root_walks(const TruncatedGraph& graph, int max_len, std::size_t prefix = 0);

/// Rebuilds the CSR adjacency from the transition table.
SparseAdjacency adjacency_from_transitions(const std::vector<std::int32_t>& transition, int alphabet_size);

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary checkpoint: header, bit-packed witnesses, delta-encoded adjacency.
void write_checkpoint(const TruncatedGraph& graph, std::ostream& out);
TruncatedGraph read_checkpoint(std::istream& in);

}  // namespace cogrowth
