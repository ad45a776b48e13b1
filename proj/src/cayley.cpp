#include "cogrowth/cayley.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>

#include <absl/container/flat_hash_map.h>

namespace cogrowth {

void WordArena::push_back(const Word& w) {
  if (w.size() > 0xffff) throw std::length_error("word arena: witness longer than 65535 letters");
  const auto blocks = w.blocks();
  store_.insert(store_.end(), blocks.begin(), blocks.end());
  offsets_.push_back(store_.size());
  lengths_.push_back(static_cast<std::uint16_t>(w.size()));
}

Word WordArena::operator[](std::size_t i) const {
  const auto first = offsets_[i];
  return Word::from_blocks({store_.data() + first, offsets_[i + 1] - first}, lengths_[i], bits_);
}

SparseAdjacency adjacency_from_transitions(const std::vector<std::int32_t>& transition, int alphabet_size) {
  SparseAdjacency adj;
  const std::size_t n = transition.size() / static_cast<std::size_t>(alphabet_size);
  adj.row_start.reserve(n + 1);
  adj.column.reserve(transition.size());
  std::vector<std::uint32_t> row;
  for (std::size_t v = 0; v < n; ++v) {
    row.clear();
    for (int s = 0; s < alphabet_size; ++s) {
      const auto t = transition[v * alphabet_size + s];
      if (t >= 0) row.push_back(static_cast<std::uint32_t>(t));
    }
    std::sort(row.begin(), row.end());
    adj.column.insert(adj.column.end(), row.begin(), row.end());
    adj.row_start.push_back(adj.column.size());
  }
  return adj;
}

namespace {

constexpr char kRootTag = 0;

// BFS over an abstract state space. `Space` supplies the start state, the
// successor rule and keys; the routine owns ordering, budgets and the two
// passes (discover N states, then resolve every transition among them).
template <class Space>
TruncatedGraph explore(const Space& space, GraphKind kind, const GroupId& id, std::size_t n,
                       const BuildLimits& limits) {
  if (n == 0) throw std::invalid_argument("graph: need at least one vertex");
  if (n > limits.max_vertices)
    throw BudgetExceeded("graph: " + std::to_string(n) + " vertices requested, budget is " +
                         std::to_string(limits.max_vertices));
  if (n > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw BudgetExceeded("graph: vertex count exceeds 32-bit indexing");

  const int letters = space.alphabet_size();
  TruncatedGraph graph;
  graph.group = id;
  graph.kind = kind;
  graph.alphabet_size = letters;
  graph.witness = WordArena(space.bits_per_symbol());

  absl::flat_hash_map<CanonicalKey, std::uint32_t> index;
  std::size_t key_bytes = 0;
  auto add = [&](CanonicalKey key, Word w, bool is_identity) {
    key_bytes += key.size() + 32;
    if (key_bytes > limits.max_key_bytes) throw BudgetExceeded("graph: canonical-key table exceeds its byte budget");
    const auto v = static_cast<std::uint32_t>(graph.depth.size());
    index.emplace(std::move(key), v);
    graph.depth.push_back(static_cast<std::uint16_t>(w.size()));
    graph.witness.push_back(w);
    if (is_identity) graph.identity_states.push_back(v);
  };

  {
    auto [key, is_identity] = space.root_key();
    add(std::move(key), Word(space.bits_per_symbol()), is_identity);
  }

  // Pass 1: discovery. `scan` is the BFS queue head.
  std::size_t scan = 0;
  bool layer_complete = true;
  CanonicalKey key;
  for (; scan < graph.size(); ++scan) {
    const Word w = graph.witness[scan];
    const auto state = space.state_of(w);
    for (int s = 0; s < letters; ++s) {
      if (!space.allowed(w, static_cast<Symbol>(s))) continue;
      key.clear();
      const bool is_identity = space.successor_key(state, static_cast<Symbol>(s), key);
      if (index.contains(key)) continue;
      if (graph.size() == n) {
        // Only asking whether the last layer is complete.
        layer_complete = false;
        break;
      }
      Word next = w;
      next.push_back(static_cast<Symbol>(s));
      add(key, std::move(next), is_identity);
    }
    if (!layer_complete) break;
    // Once N is reached keep scanning only the layer feeding the deepest one.
    if (graph.size() == n && scan + 1 < graph.size() && graph.depth[scan + 1] >= graph.max_depth()) break;
  }
  graph.covered_radius = layer_complete ? graph.max_depth() : graph.max_depth() - 1;
  // A finite group exhausted before N leaves everything covered.
  if (scan == graph.size()) graph.covered_radius = std::numeric_limits<int>::max();

  // Pass 2: transitions among retained vertices.
  graph.transition.assign(graph.size() * letters, -1);
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const Word w = graph.witness[v];
    const auto state = space.state_of(w);
    for (int s = 0; s < letters; ++s) {
      if (!space.allowed(w, static_cast<Symbol>(s))) continue;
      key.clear();
      space.successor_key(state, static_cast<Symbol>(s), key);
      if (const auto it = index.find(key); it != index.end())
        graph.transition[v * letters + s] = static_cast<std::int32_t>(it->second);
    }
  }
  index.clear();
  graph.adjacency = adjacency_from_transitions(graph.transition, letters);
  return graph;
}

// Vertices are group elements.
template <GroupFamily Fam>
struct ElementSpace {
  const Fam& g;
  CanonicalKey identity_key = key_of(g, g.identity());

  int alphabet_size() const { return g.alphabet().size(); }
  int bits_per_symbol() const { return g.alphabet().bits_per_symbol(); }
  std::pair<CanonicalKey, bool> root_key() const { return {identity_key, true}; }
  typename Fam::Element state_of(const Word& w) const { return evaluate_word(g, w); }
  bool allowed(const Word&, Symbol) const { return true; }
  bool successor_key(const typename Fam::Element& x, Symbol s, CanonicalKey& out) const {
    auto y = x;
    g.apply(y, s);
    g.append_key(y, out);
    return out == identity_key;
  }
};

// Vertices are (element, last letter) pairs plus the root (1, -).
template <GroupFamily Fam>
struct ReducedSpace {
  const Fam& g;
  CanonicalKey identity_key = key_of(g, g.identity());

  int alphabet_size() const { return g.alphabet().size(); }
  int bits_per_symbol() const { return g.alphabet().bits_per_symbol(); }
  std::pair<CanonicalKey, bool> root_key() const { return {identity_key + kRootTag, true}; }
  typename Fam::Element state_of(const Word& w) const { return evaluate_word(g, w); }
  bool allowed(const Word& w, Symbol s) const { return w.empty() || s != inverse_symbol(w.back()); }
  bool successor_key(const typename Fam::Element& x, Symbol s, CanonicalKey& out) const {
    auto y = x;
    g.apply(y, s);
    g.append_key(y, out);
    const bool is_identity = out == identity_key;
    out.push_back(static_cast<char>(s + 1));
    return is_identity;
  }
};

}  // namespace

TruncatedGraph build_G(const Group& g, std::size_t n, const BuildLimits& limits) {
  return g.visit([&](const auto& impl) {
    return explore(ElementSpace<std::decay_t<decltype(impl)>>{impl}, GraphKind::G, g.id(), n, limits);
  });
}

TruncatedGraph build_H(const Group& g, std::size_t n, const BuildLimits& limits) {
  return g.visit([&](const auto& impl) {
    return explore(ReducedSpace<std::decay_t<decltype(impl)>>{impl}, GraphKind::H, g.id(), n, limits);
  });
}

TruncatedGraph build_H_over_G(const TruncatedGraph& gg) {
  if (gg.kind != GraphKind::G) throw std::invalid_argument("build_H_over_G: input must be a G graph");
  const int k2 = gg.alphabet_size;
  const std::size_t n = gg.size();
  TruncatedGraph h;
  h.group = gg.group;
  h.kind = GraphKind::H;
  h.alphabet_size = k2;
  h.covered_radius = gg.covered_radius;
  h.witness = WordArena(gg.witness.bits_per_symbol());

  // state_of[x * k2 + s] = index of (x, s), assigned in (source, letter) order.
  std::vector<std::int32_t> state_of(n * k2, -1);
  h.depth.push_back(0);
  h.witness.push_back(Word(gg.witness.bits_per_symbol()));
  h.identity_states.push_back(0);
  std::vector<std::int32_t> element{0};
  for (std::size_t y = 0; y < n; ++y) {
    for (int s = 0; s < k2; ++s) {
      const auto x = gg.transition[y * k2 + s];
      if (x < 0 || state_of[x * k2 + s] >= 0) continue;
      const auto v = static_cast<std::int32_t>(element.size());
      state_of[x * k2 + s] = v;
      element.push_back(x);
      Word w = gg.witness[y];
      w.push_back(static_cast<Symbol>(s));
      h.depth.push_back(static_cast<std::uint16_t>(w.size()));
      h.witness.push_back(w);
      if (x == 0) h.identity_states.push_back(static_cast<std::uint32_t>(v));
    }
  }
  h.transition.assign(element.size() * k2, -1);
  for (std::size_t v = 0; v < element.size(); ++v) {
    const auto x = element[v];
    const int back = v == 0 ? -1 : inverse_symbol(h.witness[v].back());
    for (int t = 0; t < k2; ++t) {
      if (t == back) continue;
      const auto target = gg.transition[x * k2 + t];
      if (target >= 0) h.transition[v * k2 + t] = state_of[target * k2 + t];
    }
  }
  h.adjacency = adjacency_from_transitions(h.transition, k2);
  return h;
}

int classify_period(const GroupId& id) {
  // BS(p,q) has the relator t a^p t^-1 a^-q of length p+q+2; every other
  // roster relator has even exponent sum in each generator.
  if (id.family == Family::BS && (id.p + id.q) % 2 == 1) return 1;
  return 2;
}

std::vector<BigInt> count_root_walks(const TruncatedGraph& graph, int max_len, std::size_t prefix) {
  using Count = unsigned __int128;
  const std::size_t n = prefix == 0 ? graph.size() : std::min(prefix, graph.size());
  const auto& adj = graph.adjacency;
  std::vector<Count> cur(n, 0), next(n, 0);
  cur[0] = 1;
  std::vector<BigInt> out;
  auto to_big = [](Count c) -> BigInt {
    BigInt hi = static_cast<std::uint64_t>(c >> 64);
    return (hi << 64) + static_cast<std::uint64_t>(c);
  };
  auto at_identity = [&] {
    Count total = 0;
    for (auto v : graph.identity_states)
      if (v < n) total += cur[v];
    return to_big(total);
  };
  out.push_back(at_identity());
  for (int len = 1; len <= max_len; ++len) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (cur[v] == 0) continue;
      for (auto e = adj.row_start[v]; e < adj.row_start[v + 1]; ++e) {
        const auto t = adj.column[e];
        if (t >= n) break;
        if (next[t] > std::numeric_limits<Count>::max() - cur[v])
          throw std::overflow_error("count_root_walks: count exceeds 128 bits");
        next[t] += cur[v];
      }
    }
    cur.swap(next);
    out.push_back(at_identity());
  }
  return out;
}

// ---------------------------------------------------------------- checkpoints

namespace {

constexpr char kMagic[4] = {'C', 'G', 'R', 'W'};
constexpr std::uint32_t kFormatVersion = 1;

void write_varint(std::ostream& out, std::uint64_t v) {
  std::string buf;
  put_varint(buf, v);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::uint64_t read_varint(std::istream& in) {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw CheckpointError("checkpoint: truncated file");
    v |= static_cast<std::uint64_t>(c & 0x7f) << shift;
    if ((c & 0x80) == 0) return v;
  }
  throw CheckpointError("checkpoint: malformed varint");
}

std::uint64_t zigzag(std::int64_t v) { return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63); }
std::int64_t unzigzag(std::uint64_t v) { return static_cast<std::int64_t>(v >> 1) ^ -static_cast<std::int64_t>(v & 1); }

}  // namespace

void write_checkpoint(const TruncatedGraph& graph, std::ostream& out) {
  out.write(kMagic, 4);
  write_varint(out, kFormatVersion);
  const std::string group = graph.group.to_string();
  write_varint(out, group.size());
  out.write(group.data(), static_cast<std::streamsize>(group.size()));
  write_varint(out, graph.kind == GraphKind::G ? 0 : 1);
  write_varint(out, static_cast<std::uint64_t>(graph.alphabet_size));
  write_varint(out, graph.size());
  write_varint(out, zigzag(graph.covered_radius == std::numeric_limits<int>::max() ? -1 : graph.covered_radius));

  for (std::size_t v = 0; v < graph.size(); ++v) {
    const Word w = graph.witness[v];
    write_varint(out, w.size());
    for (auto block : w.blocks()) out.write(reinterpret_cast<const char*>(&block), sizeof block);
  }
  write_varint(out, graph.identity_states.size());
  std::uint64_t prev = 0;
  for (auto v : graph.identity_states) {
    write_varint(out, v - prev);
    prev = v;
  }
  // Per vertex: a letter mask, then each present target as a zigzag delta
  // from the vertex's own index.
  const int k2 = graph.alphabet_size;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    std::uint64_t mask = 0;
    for (int s = 0; s < k2; ++s)
      if (graph.transition[v * k2 + s] >= 0) mask |= std::uint64_t{1} << s;
    write_varint(out, mask);
    for (int s = 0; s < k2; ++s) {
      const auto t = graph.transition[v * k2 + s];
      if (t >= 0) write_varint(out, zigzag(static_cast<std::int64_t>(t) - static_cast<std::int64_t>(v)));
    }
  }
  if (!out) throw CheckpointError("checkpoint: write failed");
}

TruncatedGraph read_checkpoint(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw CheckpointError("checkpoint: bad magic");
  if (read_varint(in) != kFormatVersion) throw CheckpointError("checkpoint: unsupported format version");
  TruncatedGraph graph;
  std::string group(read_varint(in), '\0');
  if (!in.read(group.data(), static_cast<std::streamsize>(group.size()))) throw CheckpointError("checkpoint: truncated file");
  graph.group = GroupId::parse(group);
  graph.kind = read_varint(in) == 0 ? GraphKind::G : GraphKind::H;
  graph.alphabet_size = static_cast<int>(read_varint(in));
  if (graph.alphabet_size < 2 || graph.alphabet_size > 64) throw CheckpointError("checkpoint: bad alphabet size");
  const std::size_t n = read_varint(in);
  const auto radius = unzigzag(read_varint(in));
  graph.covered_radius = radius < 0 ? std::numeric_limits<int>::max() : static_cast<int>(radius);

  const int bits = Alphabet::standard(graph.alphabet_size / 2).bits_per_symbol();
  graph.witness = WordArena(bits);
  const Word probe(bits);
  std::vector<std::uint64_t> blocks;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t len = read_varint(in);
    blocks.resize(probe.block_count(len));
    if (!in.read(reinterpret_cast<char*>(blocks.data()), static_cast<std::streamsize>(blocks.size() * 8)))
      throw CheckpointError("checkpoint: truncated file");
    graph.witness.push_back(Word::from_blocks(blocks, len, bits));
    graph.depth.push_back(static_cast<std::uint16_t>(len));
  }
  const std::size_t ids = read_varint(in);
  std::uint64_t prev = 0;
  for (std::size_t i = 0; i < ids; ++i) {
    prev += read_varint(in);
    graph.identity_states.push_back(static_cast<std::uint32_t>(prev));
  }
  const int k2 = graph.alphabet_size;
  graph.transition.assign(n * k2, -1);
  for (std::size_t v = 0; v < n; ++v) {
    const auto mask = read_varint(in);
    for (int s = 0; s < k2; ++s) {
      if (!(mask >> s & 1U)) continue;
      const auto t = static_cast<std::int64_t>(v) + unzigzag(read_varint(in));
      if (t < 0 || static_cast<std::size_t>(t) >= n) throw CheckpointError("checkpoint: edge target out of range");
      graph.transition[v * k2 + s] = static_cast<std::int32_t>(t);
    }
  }
  graph.adjacency = adjacency_from_transitions(graph.transition, k2);
  return graph;
}

}  // namespace cogrowth
