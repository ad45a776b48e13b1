#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cogrowth/words.hpp"

namespace cogrowth {

/// One side of a forest diagram over a finite window of leaves.
///
/// A binary forest on n leaves is stored through its n-1 gaps: gap i sits
/// between leaf i and leaf i+1 and holds the depth of the caret that splits
/// those leaves, or -1 when the leaves belong to different trees. The
/// pointer is the leftmost leaf of the pointed tree.
struct Forest {
  std::vector<std::int32_t> gaps;
  std::int32_t pointer = 0;
  auto operator<=>(const Forest&) const = default;
};

/// Reduced forest diagram for an element of Thompson's group F. The window
/// is trimmed to the support (both pointers and every caret), so equal
/// elements have identical diagrams.
struct ForestDiagram {
  Forest top;
  Forest bottom;
  auto operator<=>(const ForestDiagram&) const = default;

  std::size_t leaves() const noexcept { return top.gaps.size() + 1; }
};

/// Thompson's group F on a = x0, b = x1, acting on forest diagrams from the
/// right: x0 moves the bottom pointer one tree left, x1 removes the root caret
/// of the pointed bottom tree (splitting a top leaf when that tree is a bare
/// leaf). With this orientation [ab^-1, a^-1ba] and [ab^-1, a^-2ba^2] are
/// trivial.
class ThompsonF {
 public:
  using Element = ForestDiagram;

  ThompsonF() : alphabet_(Alphabet::standard(2)) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Element identity() const;
  void apply(Element& x, Symbol s) const;
  void append_key(const Element& x, std::string& out) const;

  /// Word length with respect to {x0, x1}: the diagram is read as a reduced
  /// tree pair and the caret-pair weights of Fordham's method are summed.
  std::size_t geodesic_length(const Element& x) const;

  std::size_t carets(const Element& x) const noexcept;
  std::string debug_string(const Element& x) const;

  /// Structural check used by tests: gap depths form valid forests, the
  /// window is trimmed and no cancelling caret pair remains.
  bool is_reduced(const Element& x) const;

 private:
  Alphabet alphabet_;
};

}  // namespace cogrowth
