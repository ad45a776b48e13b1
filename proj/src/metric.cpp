#include "cogrowth/metric.hpp"

#include <iomanip>
#include <ostream>

namespace cogrowth {

std::size_t geodesic_length_F(const ForestDiagram& x) { return ThompsonF{}.geodesic_length(x); }

std::size_t geodesic_length_wreath_line(const LampState<std::int64_t>& x) {
  static const WreathLine group = make_wreath_line();
  return group.geodesic_length(x);
}

std::size_t geodesic_length_wreath_tree(const LampState<FreeWord>& x) {
  static const WreathTree group = make_wreath_tree();
  return group.geodesic_length(x);
}

std::size_t geodesic_length_wreath_nested(const LampState<LampState<std::int64_t>>& x) {
  static const WreathNested group = make_wreath_nested();
  return group.geodesic_length(x);
}

std::optional<std::uint32_t> DistanceTable::lookup(const CanonicalKey& key) const {
  const auto it = index.find(key);
  if (it == index.end()) return std::nullopt;
  return distance[it->second];
}

std::vector<std::size_t> DistanceTable::sphere_sizes() const {
  std::vector<std::size_t> out(radius + 1, 0);
  for (auto d : distance) ++out[d];
  return out;
}

void DistanceTable::write_csv(std::ostream& out) const {
  std::vector<const CanonicalKey*> keys(size(), nullptr);
  for (const auto& [key, v] : index) keys[v] = &key;
  out << "key,distance\n";
  for (std::size_t v = 0; v < size(); ++v) {
    for (unsigned char c : *keys[v]) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
    out << std::dec << ',' << distance[v] << '\n';
  }
}

namespace {

template <GroupFamily G>
DistanceTable build_table(const G& g, std::uint32_t radius, std::size_t budget) {
  DistanceTable t;
  t.radius = radius;
  t.alphabet_size = g.alphabet().size();
  const int letters = t.alphabet_size;
  const int bits = g.alphabet().bits_per_symbol();

  t.witness.emplace_back(bits);
  t.distance.push_back(0);
  t.index.emplace(key_of(g, g.identity()), 0);

  CanonicalKey key;
  for (std::size_t v = 0; v < t.distance.size(); ++v) {
    const auto x = evaluate_word(g, t.witness[v]);
    for (int s = 0; s < letters; ++s) {
      auto y = x;
      g.apply(y, static_cast<Symbol>(s));
      key.clear();
      g.append_key(y, key);
      std::int32_t target = -1;
      if (const auto it = t.index.find(key); it != t.index.end()) {
        target = static_cast<std::int32_t>(it->second);
      } else if (t.distance[v] < radius) {
        if (t.distance.size() >= budget)
          throw BudgetExceeded("bfs_oracle: ball of radius " + std::to_string(radius) + " exceeds " +
                               std::to_string(budget) + " vertices");
        target = static_cast<std::int32_t>(t.distance.size());
        Word w = t.witness[v];
        w.push_back(static_cast<Symbol>(s));
        t.witness.push_back(std::move(w));
        t.distance.push_back(t.distance[v] + 1);
        t.index.emplace(key, static_cast<std::uint32_t>(target));
      }
      t.neighbor.push_back(target);
    }
  }
  return t;
}

}  // namespace

DistanceTable bfs_oracle(const Group& g, std::uint32_t radius, std::size_t vertex_budget) {
  return g.visit([&](const auto& impl) { return build_table(impl, radius, vertex_budget); });
}

std::vector<MetricMismatch> check_metric_against_oracle(const Group& g, const DistanceTable& table) {
  std::vector<MetricMismatch> out;
  g.visit([&](const auto& impl) {
    using G = std::decay_t<decltype(impl)>;
    if constexpr (HasMetric<G>) {
      for (std::size_t v = 0; v < table.size(); ++v) {
        const std::size_t value = impl.geodesic_length(evaluate_word(impl, table.witness[v]));
        if (value != table.distance[v]) out.push_back({table.witness[v], table.distance[v], value});
      }
    } else {
      throw MetricUnavailable("no geodesic metric implemented for " + g.id().to_string());
    }
  });
  return out;
}

}  // namespace cogrowth
