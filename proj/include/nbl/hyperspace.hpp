#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nbl/bitstring.hpp"
#include "nbl/opcount.hpp"
#include "nbl/seedmix.hpp"

namespace nbl {

/// The 2N reference telegraph waves R_i^j of an N-bit system, addressed by
/// (noise-bit index i, logic value j). Sampling is a pure function of
/// (master seed, i, j, t), so steps can be evaluated in any order and from
/// any thread with identical results.
class NoiseBitSystem {
  public:
    NoiseBitSystem(std::size_t n, std::uint64_t master_seed)
        : n_(n), master_seed_(master_seed), seeds_(2 * n) {
        if (n == 0)
            throw std::invalid_argument("NoiseBitSystem: need at least one noise bit");
        for (std::size_t k = 0; k < 2 * n; ++k)
            seeds_[k] = stream_seed(master_seed, kTelegraphDomain, k);
    }

    std::size_t bit_count() const noexcept { return n_; }
    std::uint64_t master_seed() const noexcept { return master_seed_; }

    /// R_i^j(t) in {-1, +1}.
    int sample(std::size_t bit, int logic_value, std::uint64_t t) const {
        return (u64_at(seeds_[2 * bit + static_cast<std::size_t>(logic_value)], t) >> 63) ? 1 : -1;
    }

    /// All 2N references at step t, laid out as out[2*i + j].
    void sample_all(std::uint64_t t, std::span<int> out) const {
        for (std::size_t k = 0; k < seeds_.size(); ++k)
            out[k] = (u64_at(seeds_[k], t) >> 63) ? 1 : -1;
    }

  private:
    std::size_t n_;
    std::uint64_t master_seed_;
    std::vector<std::uint64_t> seeds_;
};

/// Product string vector H_b(t) = prod_i R_i^{b_i}(t). Costs N-1 counted
/// multiplications; the accumulator is seeded from the first factor.
inline double hyperspace_value(const NoiseBitSystem& sys, const BitString& b, std::uint64_t t,
                               OpCount& ops) {
    if (b.size() != sys.bit_count())
        throw std::invalid_argument("hyperspace_value: bit string length mismatch");
    int acc = sys.sample(0, b[0], t);
    for (std::size_t i = 1; i < b.size(); ++i) {
        acc *= sys.sample(i, b[i], t);
        ++ops.mul;
    }
    return static_cast<double>(acc);
}

} // namespace nbl
