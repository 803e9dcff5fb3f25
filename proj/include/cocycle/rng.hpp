#pragma once

#include <cstdint>

namespace cocycle {

// SplitMix64 (Steele, Lea, Vigna). Fixed here as the project-wide seeded
// generator so that "same seed" means the same stream on every platform.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1), 53-bit resolution
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [-1,1]
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    // uniform integer in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  private:
    std::uint64_t state_;
};

} // namespace cocycle
