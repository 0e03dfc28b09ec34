#pragma once

#include <cstdint>
#include <string>

namespace assignkit {

/// FNV-1a over the canonical serialization; reports carry this so
/// experiment tables are self-identifying by content, not by path.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string digest_hex(const std::string& bytes) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace assignkit
