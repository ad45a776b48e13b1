#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cogrowth/words.hpp"

namespace cogrowth {

using BigInt = boost::multiprecision::cpp_int;

/// Britton normal form a^{r1} t^{e1} a^{r2} t^{e2} ... a^{rk} t^{ek} a^{m}
/// for BS(p,q) = <a, t | t a^p t^-1 = a^q>. Each r_i lies in [0,q) when
/// e_i = +1 and in [0,p) when e_i = -1; no t^e a^0 t^-e pinch remains.
/// Only the trailing exponent m is unbounded.
struct BrittonWord {
  struct Syllable {
    std::uint32_t exponent;
    std::int8_t t_sign;
    bool operator==(const Syllable&) const = default;
  };
  std::vector<Syllable> syllables;
  BigInt tail = 0;

  bool operator==(const BrittonWord& other) const { return syllables == other.syllables && tail == other.tail; }
};

/// Letters are a, A, t, T.
class BaumslagSolitar {
 public:
  using Element = BrittonWord;

  BaumslagSolitar(int p, int q);

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Element identity() const { return {}; }
  void apply(Element& x, Symbol s) const;
  void append_key(const Element& x, std::string& out) const;
  std::string debug_string(const Element& x) const;

 private:
  int p_;
  int q_;
  Alphabet alphabet_;
};

}  // namespace cogrowth
