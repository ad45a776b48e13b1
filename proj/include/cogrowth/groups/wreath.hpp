#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogrowth/groups/abelian.hpp"
#include "cogrowth/groups/free_group.hpp"
#include "cogrowth/groups/key_codec.hpp"
#include "cogrowth/words.hpp"

namespace cogrowth {

/// Raised when a geodesic length is requested for an element class the
/// implemented metric does not cover.
class MetricUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of Z wr B: a finitely supported lamp configuration B -> Z (no
/// zero lamps stored) and a cursor in B.
template <class BaseElement>
struct LampState {
  std::map<BaseElement, std::int64_t> lamps;
  BaseElement cursor{};
  auto operator<=>(const LampState&) const = default;
};

/// Z wr Base with the lamp generator first (letters 0,1) followed by the base
/// group's letters. The word metric is lamp cost plus the shortest walk in
/// the base Cayley graph that starts at the identity, visits every lit lamp
/// and ends at the cursor.
template <class Base>
class Wreath {
 public:
  using BaseElement = typename Base::Element;
  using Element = LampState<BaseElement>;

  /// Largest support handled by the exact subset-DP tour in a general base.
  static constexpr std::size_t kMaxTourPoints = 14;

  Wreath(Base base, std::string names) : base_(std::move(base)), alphabet_(base_.alphabet().generators() + 1, std::move(names)) {}

  const Base& base() const noexcept { return base_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Element identity() const { return Element{{}, base_.identity()}; }

  void apply(Element& x, Symbol s) const {
    if (s < 2) {
      auto it = x.lamps.try_emplace(x.cursor, 0).first;
      it->second += (s & 1U) ? -1 : 1;
      if (it->second == 0) x.lamps.erase(it);
    } else {
      base_.apply(x.cursor, static_cast<Symbol>(s - 2));
    }
  }

  void append_key(const Element& x, std::string& out) const {
    base_.append_key(x.cursor, out);
    put_varint(out, x.lamps.size());
    for (const auto& [where, value] : x.lamps) {
      base_.append_key(where, out);
      put_zigzag(out, value);
    }
  }

  std::size_t lamp_cost(const Element& x) const noexcept {
    std::size_t cost = 0;
    for (const auto& entry : x.lamps) cost += static_cast<std::size_t>(std::llabs(entry.second));
    return cost;
  }

  std::size_t geodesic_length(const Element& x) const { return lamp_cost(x) + tour(x); }

  /// d(x, y) = |x^-1 y|, used when this group is itself a base.
  std::size_t distance(const Element& x, const Element& y) const {
    // x^-1 y has lamps y - x (seen from x's cursor) and the walk runs from
    // x.cursor to y.cursor; both lengths are translation invariant.
    Element diff{{}, y.cursor};
    std::size_t cost = 0;
    auto ix = x.lamps.begin();
    auto iy = y.lamps.begin();
    while (ix != x.lamps.end() || iy != y.lamps.end()) {
      if (iy == y.lamps.end() || (ix != x.lamps.end() && ix->first < iy->first)) {
        diff.lamps.emplace_hint(diff.lamps.end(), ix->first, -ix->second);
        ++ix;
      } else if (ix == x.lamps.end() || iy->first < ix->first) {
        diff.lamps.emplace_hint(diff.lamps.end(), iy->first, iy->second);
        ++iy;
      } else {
        if (iy->second != ix->second) diff.lamps.emplace_hint(diff.lamps.end(), ix->first, iy->second - ix->second);
        ++ix;
        ++iy;
      }
    }
    for (const auto& entry : diff.lamps) cost += static_cast<std::size_t>(std::llabs(entry.second));
    return cost + tour_between(x.cursor, diff);
  }

  std::string debug_string(const Element& x) const {
    std::string out = "{";
    bool first = true;
    for (const auto& [where, value] : x.lamps) {
      if (!first) out += ", ";
      first = false;
      out += base_.debug_string(where) + "->" + std::to_string(value);
    }
    return out + "} @ " + base_.debug_string(x.cursor);
  }

 private:
  std::size_t tour(const Element& x) const { return tour_between(base_.identity(), x); }

  // Shortest base walk from `start` through every lamp of `x` to x.cursor.
  std::size_t tour_between(const BaseElement& start, const Element& x) const {
    if constexpr (std::is_same_v<Base, IntegerLine>) {
      std::int64_t lo = std::min(start, x.cursor);
      std::int64_t hi = std::max(start, x.cursor);
      if (!x.lamps.empty()) {
        lo = std::min(lo, x.lamps.begin()->first);
        hi = std::max(hi, x.lamps.rbegin()->first);
      }
      const std::int64_t right_first = (hi - start) + (hi - lo) + (x.cursor - lo);
      const std::int64_t left_first = (start - lo) + (hi - lo) + (hi - x.cursor);
      return static_cast<std::size_t>(std::min(right_first, left_first));
    } else if constexpr (std::is_same_v<Base, FreeGroup>) {
      if (!start.letters.empty()) throw MetricUnavailable("wreath: tree tour only from the identity");
      // Minimal subtree spanning the root, the cursor and the lamps: its edges
      // are the distinct nonempty prefixes of those reduced words.
      std::vector<const FreeWord*> words;
      words.reserve(x.lamps.size() + 1);
      for (const auto& entry : x.lamps) words.push_back(&entry.first);
      words.push_back(&x.cursor);
      std::sort(words.begin(), words.end(), [](const FreeWord* a, const FreeWord* b) { return *a < *b; });
      std::size_t edges = 0;
      const FreeWord* prev = nullptr;
      for (const FreeWord* w : words) {
        std::size_t common = 0;
        if (prev != nullptr) {
          const auto n = std::min(prev->letters.size(), w->letters.size());
          while (common < n && prev->letters[common] == w->letters[common]) ++common;
        }
        edges += w->letters.size() - common;
        prev = w;
      }
      return 2 * edges - x.cursor.letters.size();
    } else {
      return subset_tour(start, x);
    }
  }

  // Exact Held-Karp over the lamp sites, with base distances as leg costs.
  std::size_t subset_tour(const BaseElement& start, const Element& x) const {
    const std::size_t n = x.lamps.size();
    if (n == 0) return base_.distance(start, x.cursor);
    if (n > kMaxTourPoints)
      throw MetricUnavailable("wreath: lamp support of " + std::to_string(n) + " sites exceeds the exact tour limit of " +
                              std::to_string(kMaxTourPoints));
    std::vector<const BaseElement*> sites;
    sites.reserve(n);
    for (const auto& entry : x.lamps) sites.push_back(&entry.first);
    std::vector<std::size_t> leg(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) leg[i * n + j] = i == j ? 0 : base_.distance(*sites[i], *sites[j]);
    constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<std::size_t> best((full + 1) * n, kInf);
    for (std::size_t i = 0; i < n; ++i) best[(std::size_t{1} << i) * n + i] = base_.distance(start, *sites[i]);
    for (std::size_t mask = 1; mask <= full; ++mask) {
      for (std::size_t last = 0; last < n; ++last) {
        const std::size_t here = best[mask * n + last];
        if (here >= kInf || !(mask >> last & 1U)) continue;
        for (std::size_t next = 0; next < n; ++next) {
          if (mask >> next & 1U) continue;
          auto& slot = best[(mask | (std::size_t{1} << next)) * n + next];
          slot = std::min(slot, here + leg[last * n + next]);
        }
      }
    }
    std::size_t answer = kInf;
    for (std::size_t last = 0; last < n; ++last)
      answer = std::min(answer, best[full * n + last] + base_.distance(*sites[last], x.cursor));
    return answer;
  }

  Base base_;
  Alphabet alphabet_;
};

/// Z wr Z: letters a (lamp), b (cursor step).
using WreathLine = Wreath<IntegerLine>;
/// Z wr F2: letters a (lamp), s, t (free base).
using WreathTree = Wreath<FreeGroup>;
/// Z wr (Z wr Z): letters a (outer lamp), c (inner lamp), b (inner cursor).
using WreathNested = Wreath<WreathLine>;

inline WreathLine make_wreath_line() { return WreathLine(IntegerLine{}, "aAbB"); }
inline WreathTree make_wreath_tree() { return WreathTree(FreeGroup(Alphabet(2, "sStT")), "aAsStT"); }
inline WreathNested make_wreath_nested() { return WreathNested(make_wreath_line(), "aAcCbB"); }

}  // namespace cogrowth
