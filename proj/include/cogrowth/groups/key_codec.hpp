#pragma once

#include <cstdint>
#include <string>

namespace cogrowth {

/// Byte string uniquely identifying a group element. Every family writes a
/// prefix-free encoding so keys can be nested inside wreath-product keys.
using CanonicalKey = std::string;

inline void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

inline void put_zigzag(std::string& out, std::int64_t v) {
  put_varint(out, (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63));
}

}  // namespace cogrowth
