#pragma once

#include <cmath>
#include <cstdint>

#include "nbl/seedmix.hpp"

namespace nbl {

/// Standard-normal stream over SplitMix64 using the Marsaglia polar method.
/// The transform and its uniform consumption order are frozen (docs/FORMATS.md,
/// fixture values in the tests), so a seed fully determines the sequence.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) noexcept : uniforms_(seed) {}

    double next() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double v1, v2, s;
        do {
            v1 = 2.0 * uniforms_.next_unit() - 1.0;
            v2 = 2.0 * uniforms_.next_unit() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v2 * f;
        have_spare_ = true;
        return v1 * f;
    }

  private:
    SplitMix64 uniforms_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace nbl
