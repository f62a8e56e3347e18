#pragma once

#include <cstdint>

namespace ropas {

// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014; mix constants from Vigna's public-domain
// reference implementation).  Pure 64-bit integer arithmetic, so sequences
// are bit-identical on every platform.
//
// Stream derivation rule: trial r of master seed s draws from a SplitMix64
// generator whose initial state is mix(s + (r+1)*golden).  The mix function
// has full avalanche, so consecutive stream indices land at unrelated points
// of the state space; trials can run in any order or in parallel and still
// reproduce bit-identically.
struct splitmix64 {
  static constexpr uint64_t golden = 0x9e3779b97f4a7c15ull;

  uint64_t state = 0;

  static constexpr uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static constexpr splitmix64 stream(uint64_t seed, uint64_t index) {
    return splitmix64{mix(seed + (index + 1) * golden)};
  }

  constexpr uint64_t next() {
    state += golden;
    return mix(state);
  }

  // uniform in [0,1): top 53 bits scaled by 2^-53 (exact in binary64)
  constexpr double next_double() { return double(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, bound); bound > 0.  Multiply-shift rejection-free
  // mapping is fine here: bias is < bound/2^64, invisible at simulation scale.
  constexpr uint64_t next_below(uint64_t bound) {
    return uint64_t((__uint128_t(next()) * bound) >> 64);
  }
};

} // namespace ropas
