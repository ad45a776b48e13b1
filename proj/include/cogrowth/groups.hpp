#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "cogrowth/groups/abelian.hpp"
#include "cogrowth/groups/baumslag_solitar.hpp"
#include "cogrowth/groups/free_group.hpp"
#include "cogrowth/groups/key_codec.hpp"
#include "cogrowth/groups/thompson.hpp"
#include "cogrowth/groups/wreath.hpp"
#include "cogrowth/words.hpp"

namespace cogrowth {

/// What every group family provides: canonical right multiplication by a
/// letter and a prefix-free canonical key.
template <class G>
concept GroupFamily = requires(const G& g, typename G::Element& x, const typename G::Element& cx, Symbol s,
                               std::string& out) {
  { g.alphabet() } -> std::convertible_to<const Alphabet&>;
  { g.identity() } -> std::same_as<typename G::Element>;
  g.apply(x, s);
  g.append_key(cx, out);
};

/// Families with a computable word metric.
template <class G>
concept HasMetric = GroupFamily<G> && requires(const G& g, const typename G::Element& x) {
  { g.geodesic_length(x) } -> std::convertible_to<std::size_t>;
};

enum class Family { Free2, ZxZ, BS, ThompsonF, WreathZZ, WreathZF2, WreathZZZ };

struct GroupId {
  Family family = Family::Free2;
  int p = 0;  // BS only
  int q = 0;

  /// Accepts f2, z2, bs:P:Q, thompson, zwrz, zwrf2, zwrzwrz.
  static GroupId parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const GroupId&) const = default;
};

using GroupVariant =
    std::variant<FreeGroup, FreeAbelian2, BaumslagSolitar, ThompsonF, WreathLine, WreathTree, WreathNested>;

using GroupElement = std::variant<FreeWord, LatticePoint, BrittonWord, ForestDiagram, LampState<std::int64_t>,
                                  LampState<FreeWord>, LampState<LampState<std::int64_t>>>;

/// A roster group with its concrete family implementation.
class Group {
 public:
  explicit Group(GroupId id);

  const GroupId& id() const noexcept { return id_; }
  const Alphabet& alphabet() const;
  bool has_metric() const noexcept;

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), impl_);
  }

 private:
  GroupId id_;
  GroupVariant impl_;
};

template <GroupFamily G>
typename G::Element evaluate_word(const G& g, const Word& w) {
  auto x = g.identity();
  for (std::size_t i = 0; i < w.size(); ++i) g.apply(x, w[i]);
  return x;
}

template <GroupFamily G>
CanonicalKey key_of(const G& g, const typename G::Element& x) {
  CanonicalKey out;
  g.append_key(x, out);
  return out;
}

GroupElement identity(const Group& g);
GroupElement apply_gen(const Group& g, GroupElement x, Symbol s);
GroupElement evaluate(const Group& g, const Word& w);
CanonicalKey canonical_key(const Group& g, const GroupElement& x);
std::string debug_string(const Group& g, const GroupElement& x);

/// Word-metric length; throws MetricUnavailable for BS(p,q) or elements the
/// metric does not cover.
std::size_t geodesic_length(const Group& g, const GroupElement& x);

}  // namespace cogrowth
