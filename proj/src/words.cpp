#include "cogrowth/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace cogrowth {

namespace {

int bits_for(int letters) {
  int bits = 1;
  while ((1 << bits) < letters) ++bits;
  return bits;
}

}  // namespace

Alphabet::Alphabet(int generators, std::string names)
    : generators_(generators), bits_(0), names_(std::move(names)) {
  if (generators < 1 || generators > 8) throw std::invalid_argument("alphabet: generator count must be in [1,8]");
  if (static_cast<int>(names_.size()) != 2 * generators)
    throw std::invalid_argument("alphabet: need exactly 2k letter names");
  std::string sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("alphabet: letter names must be distinct");
  bits_ = bits_for(2 * generators);
}

Alphabet Alphabet::standard(int generators) {
  std::string names;
  for (int i = 0; i < generators; ++i) {
    names.push_back(static_cast<char>('a' + i));
    names.push_back(static_cast<char>('A' + i));
  }
  return Alphabet(generators, names);
}

Symbol Alphabet::inverse(Symbol s) const {
  if (s >= size()) throw std::out_of_range("alphabet: symbol index out of range");
  return inverse_symbol(s);
}

char Alphabet::name(Symbol s) const {
  if (s >= size()) throw std::out_of_range("alphabet: symbol index out of range");
  return names_[s];
}

Symbol Alphabet::parse_symbol(char c) const {
  const auto pos = names_.find(c);
  if (pos == std::string::npos) throw std::invalid_argument(std::string("alphabet: unknown letter '") + c + "'");
  return static_cast<Symbol>(pos);
}

Word::Word(int bits_per_symbol)
    : bits_(static_cast<std::uint8_t>(bits_per_symbol)),
      per_block_(static_cast<std::uint8_t>(64 / bits_per_symbol)),
      mask_((std::uint64_t{1} << bits_per_symbol) - 1) {
  if (bits_per_symbol < 1 || bits_per_symbol > 8) throw std::invalid_argument("word: bits per symbol must be in [1,8]");
}

Word::Word(std::initializer_list<Symbol> symbols, int bits_per_symbol) : Word(bits_per_symbol) {
  reserve(symbols.size());
  for (Symbol s : symbols) push_back(s);
}

void Word::push_back(Symbol s) {
  if (s > mask_) throw std::out_of_range("word: symbol does not fit the packing width");
  const std::size_t block = size_ / per_block_;
  const unsigned shift = static_cast<unsigned>((size_ % per_block_) * bits_);
  if (block == blocks_.size()) blocks_.push_back(0);
  blocks_[block] = (blocks_[block] & ~(mask_ << shift)) | (std::uint64_t{s} << shift);
  ++size_;
}

void Word::pop_back() {
  if (size_ == 0) throw std::out_of_range("word: pop_back on empty word");
  --size_;
  const std::size_t block = size_ / per_block_;
  const unsigned shift = static_cast<unsigned>((size_ % per_block_) * bits_);
  blocks_[block] &= ~(mask_ << shift);
  if (size_ % per_block_ == 0) blocks_.resize(block);
}

void Word::clear() noexcept {
  blocks_.clear();
  size_ = 0;
}

void Word::reserve(std::size_t n) { blocks_.reserve(block_count(n)); }

std::vector<Symbol> Word::symbols() const {
  std::vector<Symbol> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
  return out;
}

Word Word::from_blocks(std::span<const std::uint64_t> blocks, std::size_t size, int bits_per_symbol) {
  Word w(bits_per_symbol);
  if (blocks.size() != w.block_count(size)) throw std::invalid_argument("word: block count does not match length");
  w.blocks_.assign(blocks.begin(), blocks.end());
  w.size_ = size;
  // Clear padding bits so equality stays bitwise.
  if (size % w.per_block_ != 0) {
    const unsigned used = static_cast<unsigned>((size % w.per_block_) * w.bits_);
    w.blocks_.back() &= (std::uint64_t{1} << used) - 1;
  }
  return w;
}

bool Word::operator==(const Word& other) const noexcept {
  if (size_ != other.size_ || bits_ != other.bits_) return false;
  return std::equal(blocks_.begin(), blocks_.begin() + static_cast<std::ptrdiff_t>(block_count(size_)),
                    other.blocks_.begin());
}

Word make_word(const Alphabet& alphabet, std::initializer_list<Symbol> symbols) {
  Word w(alphabet.bits_per_symbol());
  for (Symbol s : symbols) {
    if (s >= alphabet.size()) throw std::out_of_range("word: symbol index out of range");
    w.push_back(s);
  }
  return w;
}

Word free_reduce(const Word& w) {
  Word out(w.bits_per_symbol());
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Symbol s = w[i];
    if (!out.empty() && out.back() == inverse_symbol(s)) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == inverse_symbol(w[i - 1])) return false;
  return true;
}

std::string to_string(const Word& w, const Alphabet& alphabet) {
  std::string out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(alphabet.name(w[i]));
  return out;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word w(alphabet.bits_per_symbol());
  w.reserve(text.size());
  for (char c : text) w.push_back(alphabet.parse_symbol(c));
  return w;
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker), static_cast<std::uint32_t>(worker >> 32), 0x9e3779b9U};
  return std::mt19937_64(seq);
}

}  // namespace cogrowth
