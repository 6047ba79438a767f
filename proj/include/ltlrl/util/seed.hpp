#pragma once

#include <cstdint>
#include <string_view>

namespace ltlrl::util {

/* Deterministic seed derivation.  Every random stream in a run is keyed by
 * the run seed plus a short purpose tag (and an index for per-worker
 * streams), so adding or removing one consumer never shifts the draws seen
 * by another.  The mix is splitmix64 over an FNV-1a digest of the tag;
 * fixed constants, no platform dependence. */

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : text) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::string_view tag,
                                    std::uint64_t index = 0) {
  std::uint64_t h = splitmix64(root);
  h = splitmix64(h ^ fnv1a(tag));
  return splitmix64(h ^ index);
}

}  // namespace ltlrl::util
