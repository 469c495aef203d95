#pragma once

#include <cstdint>

namespace qmc {

/// splitmix64: tiny, seedable, and identical on every platform. Used instead
/// of <random> distributions so seeded runs are byte-reproducible.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound). Modulo bias is irrelevant at desk scale and
    /// keeps the stream definition trivial.
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    /// Independent substream for trial `index` of a seeded run.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mix(seed ^ (0x6a09e667f3bcc909ULL + index * 0x3c6ef372fe94f82bULL));
        mix.next();
        return mix;
    }

  private:
    std::uint64_t state_;
};

}  // namespace qmc
