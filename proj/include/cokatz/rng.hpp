#pragma once

#include <cmath>
#include <cstdint>

namespace cokatz {

/// Counter-based splitmix64 stream. Streams derived from (seed, stream id)
/// are independent and reproducible across platforms, which keeps experiment
/// reports bit-identical for a given seed regardless of trial ordering.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., bound-1} (bound > 0); negligible modulo bias for
    /// the graph sizes used here.
    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

    /// Sample with cdf x^(1/power) on [0, 1]: U^power for U uniform.
    double uniform_pow(double power) { return std::pow(uniform01(), power); }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace cokatz
