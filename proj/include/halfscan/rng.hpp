#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace halfscan {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Named seed derivation: (parent seed, component label, ordinals...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t a = 0,
                                 std::uint64_t b = 0) {
  std::uint64_t s = splitmix64(seed ^ label_hash(label));
  s = splitmix64(s ^ a);
  return splitmix64(s ^ (b * 0xd6e8feb86659fd93ULL));
}

inline Rng make_rng(std::uint64_t seed, std::string_view label, std::uint64_t a = 0, std::uint64_t b = 0) {
  return Rng(derive_seed(seed, label, a, b));
}

}  // namespace halfscan
