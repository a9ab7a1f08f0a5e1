// Copyright (c) 2026 The topicseg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TOPICSEG_HASHING_HPP_
#define TOPICSEG_HASHING_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace topicseg {

// FNV-1a, used for the hashing vocabulary, cache keys, and parameter digests.
inline uint64_t fnv1a64(std::string_view data, uint64_t h = 0xcbf29ce484222325ULL) {
  for (const char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t fnv1a64_bytes(const void* data, size_t n, uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string to_hex(uint64_t v) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = kHex[v & 0xF];
    v >>= 4;
  }
  return s;
}

// Streaming variant for digesting parameter blobs and cache keys.
class Digest {
 public:
  Digest& update(std::string_view s) {
    h_ = fnv1a64(s, h_);
    return *this;
  }
  Digest& update_bytes(const void* data, size_t n) {
    h_ = fnv1a64_bytes(data, n, h_);
    return *this;
  }
  uint64_t value() const { return h_; }
  std::string hex() const { return to_hex(h_); }

 private:
  uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace topicseg

#endif  // TOPICSEG_HASHING_HPP_
