#pragma once

#include <cstdint>

namespace nbl {

// 64-bit avalanche mixer and stream-seed derivation. The exact constants
// are part of the file/fixture contract; see docs/FORMATS.md.

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer (Steele/Lea/Flood). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Domain tags keep unrelated stream families out of each other's seed space.
inline constexpr std::uint64_t kTelegraphDomain = 0x5254572d72656673ULL; // "RTW-refs"
inline constexpr std::uint64_t kGaussianDomain = 0x6f752d6761757373ULL;  // "ou-gauss"
inline constexpr std::uint64_t kGeneratorDomain = 0x726e672d66616e6fULL; // "rng-fano"

/// Derives the seed of stream `index` within `domain` from a master seed.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t domain,
                                    std::uint64_t index) noexcept {
    return mix64(mix64(master ^ domain) + kGoldenGamma * index);
}

/// Random access into a SplitMix64 output sequence: element `t` (0-based)
/// of the stream started at `seed`. Agrees with SplitMix64::next().
constexpr std::uint64_t u64_at(std::uint64_t seed, std::uint64_t t) noexcept {
    return mix64(seed + kGoldenGamma * (t + 1));
}

/// Sequential SplitMix64 generator.
class SplitMix64 {
  public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) using the top 53 bits.
    double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

} // namespace nbl
