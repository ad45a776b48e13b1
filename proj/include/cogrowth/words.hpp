#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogrowth {

/// Index into a 2k-letter alphabet. Generator i is symbol 2i, its inverse 2i+1.
using Symbol = std::uint8_t;

/// Inverse pairing on alphabet indices: a <-> A, b <-> B, ...
constexpr Symbol inverse_symbol(Symbol s) noexcept { return static_cast<Symbol>(s ^ 1U); }

/// Generator set S of size k together with the printable names of the 2k
/// letters a1, a1^-1, ..., ak, ak^-1. The letter order is also the BFS
/// expansion order used everywhere.
class Alphabet {
 public:
  /// `names` holds one character per letter, generator before inverse.
  Alphabet(int generators, std::string names);

  /// Letters a A b B c C ... for k generators.
  static Alphabet standard(int generators);

  int generators() const noexcept { return generators_; }
  int size() const noexcept { return 2 * generators_; }
  int bits_per_symbol() const noexcept { return bits_; }
  const std::string& names() const noexcept { return names_; }

  /// Checked inverse; throws std::out_of_range for s >= 2k.
  Symbol inverse(Symbol s) const;
  char name(Symbol s) const;
  Symbol parse_symbol(char c) const;

  bool operator==(const Alphabet&) const = default;

 private:
  int generators_;
  int bits_;
  std::string names_;
};

/// Sequence of alphabet indices packed at a fixed number of bits per symbol
/// (2 bits for 4 letters, 3 bits for 6). Symbols never straddle a block.
class Word {
 public:
  explicit Word(int bits_per_symbol = 2);
  Word(std::initializer_list<Symbol> symbols, int bits_per_symbol = 2);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  int bits_per_symbol() const noexcept { return bits_; }

  Symbol operator[](std::size_t i) const noexcept {
    const std::size_t block = i / per_block_;
    const unsigned shift = static_cast<unsigned>((i % per_block_) * bits_);
    return static_cast<Symbol>((blocks_[block] >> shift) & mask_);
  }
  Symbol back() const noexcept { return (*this)[size_ - 1]; }

  void push_back(Symbol s);
  void pop_back();
  void clear() noexcept;
  void reserve(std::size_t n);

  std::vector<Symbol> symbols() const;

  /// Raw packed storage, for checkpoint files.
  std::span<const std::uint64_t> blocks() const noexcept { return {blocks_.data(), block_count(size_)}; }
  static Word from_blocks(std::span<const std::uint64_t> blocks, std::size_t size, int bits_per_symbol);
  std::size_t block_count(std::size_t n) const noexcept { return (n + per_block_ - 1) / per_block_; }

  bool operator==(const Word& other) const noexcept;

 private:
  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
  std::uint8_t bits_;
  std::uint8_t per_block_;
  std::uint64_t mask_;
};

Word make_word(const Alphabet& alphabet, std::initializer_list<Symbol> symbols);

/// Cancels adjacent inverse pairs until none remain (single stack pass).
Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w);

/// Appends one letter drawn uniformly from the alphabet.
template <class Rng>
void grow_random(Word& w, const Alphabet& alphabet, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, alphabet.size() - 1);
  w.push_back(static_cast<Symbol>(pick(rng)));
}

/// ASCII form over the alphabet's letter names, e.g. "abAB".
std::string to_string(const Word& w, const Alphabet& alphabet);
Word parse_word(std::string_view text, const Alphabet& alphabet);

/// Deterministic per-worker random stream.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t worker);

}  // namespace cogrowth
