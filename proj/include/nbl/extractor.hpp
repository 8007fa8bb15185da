#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nbl/ou.hpp"

namespace nbl {

/// One sign-extractor pipeline: an OU noise source, a decimation factor
/// (one emitted bit per `decimation` input steps) and the zero-event policy.
struct ExtractorConfig {
    OuConfig ou;
    int decimation = 0; ///< 0 selects default_decimation(ou.rho)
    bool skip_zero = true;
};

/// ceil(5 / (1 - rho)): about five correlation times between emitted bits.
int default_decimation(double rho);

/// Raw sign XOR: [x_curr > 0] xor [(x_next - x_prev) > 0].
int extract_bit_raw(double x_prev, double x_curr, double x_next);

/// True when the amplitude or the central difference is exactly zero and
/// the sample carries no sign information.
bool is_zero_event(double x_prev, double x_curr, double x_next);

/// Sign-of-amplitude XOR sign-of-velocity with the velocity taken as the
/// central difference x_next - x_prev. Empty on a zero event so the stream
/// driver can resample.
std::optional<int> extract_bit(double x_prev, double x_curr, double x_next);

struct GeneratorProvenance {
    OuConfig ou;
    int decimation = 1;
    std::uint64_t zero_events = 0;
};

/// A produced bit sequence plus everything needed to regenerate it.
struct BitStream {
    std::vector<std::uint8_t> bits;
    std::vector<GeneratorProvenance> sources;

    std::size_t size() const { return bits.size(); }
};

/// Drives the OU process and emits `n_bits` extracted bits, one per
/// `decimation` steps. On a zero event the extraction point advances a
/// single step and retries (when skip_zero), or falls back to the raw sign
/// comparison (when !skip_zero). Deterministic in the config.
BitStream generate(const ExtractorConfig& cfg, std::size_t n_bits);

/// Bitwise XOR across k >= 1 equal-length streams.
BitStream xor_combine(std::span<const BitStream> streams);

} // namespace nbl
