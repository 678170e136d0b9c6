#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace specrp {

// Seed splitting: every consumer of randomness derives its own stream from a
// root seed and a tag, so adding a new consumer never perturbs existing ones.
// child(root, tag) = splitmix64(root ^ fnv1a(tag)).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t child_seed(std::uint64_t root, std::string_view tag) {
  return splitmix64(root ^ fnv1a(tag));
}

inline std::uint64_t child_seed(std::uint64_t root, std::string_view tag,
                                std::uint64_t index) {
  return splitmix64(splitmix64(root ^ fnv1a(tag)) + index);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace specrp
