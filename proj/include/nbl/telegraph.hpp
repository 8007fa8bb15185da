#pragma once

#include <cstdint>

#include "nbl/seedmix.hpp"

namespace nbl {

/// Reference telegraph wave: an i.i.d. equiprobable +/-1 sequence, one per
/// (noise-bit index, logic value) pair. Samples are a pure function of
/// (master_seed, stream id, step), so any step can be queried in any order
/// and from any thread.
class TelegraphStream {
  public:
    TelegraphStream(std::uint64_t master_seed, std::uint32_t bit_index, int logic_value) noexcept
        : master_seed_(master_seed), bit_index_(bit_index), logic_value_(logic_value),
          seed_(stream_seed(master_seed, kTelegraphDomain,
                            2ULL * bit_index + static_cast<std::uint64_t>(logic_value))) {}

    /// Sample at step t: the sign bit of the mixed counter word.
    int sample(std::uint64_t t) const noexcept {
        return (u64_at(seed_, t) >> 63) ? 1 : -1;
    }

    /// Sequential read at the current position.
    int next() noexcept { return sample(position_++); }

    std::uint64_t position() const noexcept { return position_; }
    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint32_t bit_index() const noexcept { return bit_index_; }
    int logic_value() const noexcept { return logic_value_; }

  private:
    std::uint64_t master_seed_;
    std::uint32_t bit_index_;
    int logic_value_;
    std::uint64_t seed_;
    std::uint64_t position_ = 0;
};

} // namespace nbl
