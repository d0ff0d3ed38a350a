#pragma once

#include <cstdint>

namespace projcong {

// splitmix64: tiny, fully deterministic across platforms. Standard-library
// distributions are not pinned by the standard, so sampling code draws raw
// 64-bit words from this and reduces by hand.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform-ish on [lo, hi] inclusive; bias is irrelevant here
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

}  // namespace projcong
