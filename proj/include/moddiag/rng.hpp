#pragma once

#include <cstdint>

namespace moddiag {

/* Counter-based deterministic stream (splitmix64 core). Every "random"
 * choice in the library draws from one of these, keyed by (seed, stream),
 * so identical inputs always reproduce identical outputs. */
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t counter = 0;

  RngStream() = default;
  RngStream(std::uint64_t seed_, std::uint64_t stream_) : seed(seed_), stream(stream_) {}

  std::uint64_t next() {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    z += 0x9e3779b97f4a7c15ULL * (++counter);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint32_t next_mod(std::uint32_t m) {
    return static_cast<std::uint32_t>(next() % m);
  }

  RngStream fork(std::uint64_t substream) const {
    return RngStream(seed, stream * 0x100000001b3ULL + substream + 1);
  }
};

}  // namespace moddiag
