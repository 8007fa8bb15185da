#include "nbl/extractor.hpp"

#include <cmath>
#include <stdexcept>

namespace nbl {

int default_decimation(double rho) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("default_decimation: rho must be in [0, 1)");
    // epsilon guard so 5/(1-rho) landing on an integer is not bumped up by
    // fp division noise
    return static_cast<int>(std::ceil(5.0 / (1.0 - rho) - 1e-9));
}

int extract_bit_raw(double x_prev, double x_curr, double x_next) {
    const int bit_a = x_curr > 0.0 ? 1 : 0;
    const int bit_v = (x_next - x_prev) > 0.0 ? 1 : 0;
    return bit_a ^ bit_v;
}

bool is_zero_event(double x_prev, double x_curr, double x_next) {
    return x_curr == 0.0 || x_next == x_prev;
}

std::optional<int> extract_bit(double x_prev, double x_curr, double x_next) {
    if (is_zero_event(x_prev, x_curr, x_next))
        return std::nullopt;
    return extract_bit_raw(x_prev, x_curr, x_next);
}

BitStream generate(const ExtractorConfig& cfg, std::size_t n_bits) {
    if (cfg.decimation < 0)
        throw std::invalid_argument("generate: decimation must be >= 1");
    const int d = cfg.decimation > 0 ? cfg.decimation : default_decimation(cfg.ou.rho);

    BitStream out;
    out.bits.reserve(n_bits);

    OuProcess ou(cfg.ou); // validates the config
    std::uint64_t zero_events = 0;

    if (n_bits > 0) {
        // sliding window (x_prev, x_curr, x_next); the first extraction
        // point is the second sample ever produced
        double x_prev = ou.state().x;
        double x_curr = ou.step();
        double x_next = ou.step();
        int countdown = 1;
        while (out.bits.size() < n_bits) {
            if (--countdown == 0) {
                const auto bit = extract_bit(x_prev, x_curr, x_next);
                if (bit) {
                    out.bits.push_back(static_cast<std::uint8_t>(*bit));
                    countdown = d;
                } else if (cfg.skip_zero) {
                    ++zero_events;
                    countdown = 1; // retry at the next step
                } else {
                    ++zero_events;
                    out.bits.push_back(
                        static_cast<std::uint8_t>(extract_bit_raw(x_prev, x_curr, x_next)));
                    countdown = d;
                }
            }
            x_prev = x_curr;
            x_curr = x_next;
            x_next = ou.step();
        }
    }

    out.sources.push_back({ou.config(), d, zero_events});
    return out;
}

BitStream xor_combine(std::span<const BitStream> streams) {
    if (streams.empty())
        throw std::invalid_argument("xor_combine: need at least one stream");
    const std::size_t n = streams.front().size();
    for (const auto& s : streams)
        if (s.size() != n)
            throw std::invalid_argument("xor_combine: stream lengths differ");

    BitStream out;
    out.bits = streams.front().bits;
    out.sources = streams.front().sources;
    for (std::size_t k = 1; k < streams.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i)
            out.bits[i] ^= streams[k].bits[i];
        out.sources.insert(out.sources.end(), streams[k].sources.begin(),
                           streams[k].sources.end());
    }
    return out;
}

} // namespace nbl
