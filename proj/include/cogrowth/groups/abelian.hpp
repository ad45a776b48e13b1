#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "cogrowth/groups/key_codec.hpp"
#include "cogrowth/words.hpp"

namespace cogrowth {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  auto operator<=>(const LatticePoint&) const = default;
};

/// Z^2 with a = (1,0), b = (0,1).
class FreeAbelian2 {
 public:
  using Element = LatticePoint;

  FreeAbelian2() : alphabet_(Alphabet::standard(2)) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Element identity() const { return {}; }

  void apply(Element& v, Symbol s) const noexcept {
    const std::int64_t step = (s & 1U) ? -1 : 1;
    if (s < 2) {
      v.x += step;
    } else {
      v.y += step;
    }
  }

  void append_key(const Element& v, std::string& out) const {
    put_zigzag(out, v.x);
    put_zigzag(out, v.y);
  }

  std::size_t geodesic_length(const Element& v) const noexcept {
    return static_cast<std::size_t>(std::llabs(v.x) + std::llabs(v.y));
  }

  std::string debug_string(const Element& v) const {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
  }

 private:
  Alphabet alphabet_;
};

/// Z on one generator; the base group of the lamplighter-type Z wr Z.
class IntegerLine {
 public:
  using Element = std::int64_t;

  IntegerLine() : alphabet_(Alphabet::standard(1)) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Element identity() const { return 0; }
  void apply(Element& x, Symbol s) const noexcept { x += (s & 1U) ? -1 : 1; }
  void append_key(const Element& x, std::string& out) const { put_zigzag(out, x); }
  std::size_t geodesic_length(const Element& x) const noexcept { return static_cast<std::size_t>(std::llabs(x)); }
  std::size_t distance(const Element& x, const Element& y) const noexcept {
    return static_cast<std::size_t>(std::llabs(x - y));
  }
  std::string debug_string(const Element& x) const { return std::to_string(x); }

 private:
  Alphabet alphabet_;
};

}  // namespace cogrowth
