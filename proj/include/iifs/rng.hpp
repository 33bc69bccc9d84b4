#pragma once

#include <cstdint>

namespace iifs {

// Counter-based seeding: every (root seed, stream index) pair yields an
// independent generator, so parallel sampling is reproducible for any
// worker count.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  Rng(std::uint64_t root_seed, std::uint64_t stream) {
    std::uint64_t s = root_seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    s0_ = splitmix64(s);
    s1_ = splitmix64(s);
    if (s0_ == 0 && s1_ == 0) s1_ = 1;
  }

  std::uint64_t next_u64() {
    // xoroshiro128+
    std::uint64_t a = s0_, b = s1_;
    std::uint64_t r = a + b;
    b ^= a;
    s0_ = rotl(a, 24) ^ b ^ (b << 16);
    s1_ = rotl(b, 37);
    return r;
  }

  // uniform in the open interval (0,1), 53-bit resolution, never 0 or 1
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // unbiased integer in [lo, hi]; portable (no stdlib distribution)
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t span = hi - lo + 1;
    if (span == 0) return next_u64();  // full range
    std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % span;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return lo + v % span;
  }

  // raw 64-bit mantissa for an exact dyadic point in (0,1)
  std::uint64_t dyadic_mantissa() {
    std::uint64_t m = next_u64() | 1ULL;  // odd => strictly inside
    return m;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s0_, s1_;
};

}  // namespace iifs
