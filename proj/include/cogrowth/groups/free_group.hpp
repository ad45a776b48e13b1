#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "cogrowth/groups/key_codec.hpp"
#include "cogrowth/words.hpp"

namespace cogrowth {

/// Freely reduced word; the normal form of a free-group element.
struct FreeWord {
  std::vector<Symbol> letters;
  auto operator<=>(const FreeWord&) const = default;
};

/// Free group on the alphabet's generators. Its Cayley graph is a tree.
class FreeGroup {
 public:
  using Element = FreeWord;

  explicit FreeGroup(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Element identity() const { return {}; }

  void apply(Element& x, Symbol s) const {
    if (!x.letters.empty() && x.letters.back() == inverse_symbol(s)) {
      x.letters.pop_back();
    } else {
      x.letters.push_back(s);
    }
  }

  void append_key(const Element& x, std::string& out) const {
    put_varint(out, x.letters.size());
    out.append(x.letters.begin(), x.letters.end());
  }

  std::size_t geodesic_length(const Element& x) const noexcept { return x.letters.size(); }

  /// Tree distance |x| + |y| - 2 |common prefix|.
  std::size_t distance(const Element& x, const Element& y) const noexcept {
    const auto [ix, iy] = std::mismatch(x.letters.begin(), x.letters.end(), y.letters.begin(), y.letters.end());
    const auto common = static_cast<std::size_t>(ix - x.letters.begin());
    return x.letters.size() + y.letters.size() - 2 * common;
  }

  std::string debug_string(const Element& x) const {
    if (x.letters.empty()) return "e";
    std::string out;
    for (Symbol s : x.letters) out.push_back(alphabet_.name(s));
    return out;
  }

 private:
  Alphabet alphabet_;
};

}  // namespace cogrowth
