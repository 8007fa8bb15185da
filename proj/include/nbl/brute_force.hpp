#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nbl/bitstring.hpp"
#include "nbl/gates.hpp"
#include "nbl/opcount.hpp"

namespace nbl {

struct GateOp {
    Gate2x2<double> gate;
    std::size_t target = 0;
};

using GateSequence = std::vector<GateOp>;

/// Applies a gate sequence to a dense 2^N amplitude vector in place. Basis
/// index packs bit i at the 2^i place. Each gate touches all 2^(N-1)
/// amplitude pairs at 6 counted operations per pair, 3 * 2^N per gate.
inline void brute_force_apply(std::vector<std::complex<double>>& amp, std::size_t n,
                              std::span<const GateOp> sequence, OpCount& ops) {
    if (amp.size() != (std::size_t{1} << n))
        throw std::invalid_argument("brute_force_apply: amplitude vector size mismatch");
    for (const auto& op : sequence) {
        if (op.target >= n)
            throw std::out_of_range("brute_force_apply: target bit out of range");
        const std::size_t stride = std::size_t{1} << op.target;
        const auto& g = op.gate;
        for (std::size_t base = 0; base < amp.size(); ++base) {
            if (base & stride) continue;
            const auto v0 = amp[base];
            const auto v1 = amp[base | stride];
            amp[base] = g.g00 * v0 + g.g01 * v1;
            amp[base | stride] = g.g10 * v0 + g.g11 * v1;
            ops.mul += 4;
            ops.add += 2;
        }
    }
}

/// Dense oracle started from the uniform all-ones coefficient vector, the
/// counterpart of ProductFormState::full_superposition.
inline std::vector<std::complex<double>> brute_force_from_full(std::size_t n,
                                                               std::span<const GateOp> sequence,
                                                               OpCount& ops) {
    if (n == 0 || n > 20)
        throw std::invalid_argument("brute_force_from_full: n must be in [1, 20]");
    std::vector<std::complex<double>> amp(std::size_t{1} << n, std::complex<double>(1));
    brute_force_apply(amp, n, sequence, ops);
    return amp;
}

/// Dense oracle started from basis string c.
inline std::vector<std::complex<double>> brute_force_from_basis(std::size_t n, const BitString& c,
                                                                std::span<const GateOp> sequence,
                                                                OpCount& ops) {
    if (n == 0 || n > 20)
        throw std::invalid_argument("brute_force_from_basis: n must be in [1, 20]");
    if (c.size() != n)
        throw std::invalid_argument("brute_force_from_basis: bit string length mismatch");
    std::vector<std::complex<double>> amp(std::size_t{1} << n, std::complex<double>(0));
    amp[c.index()] = std::complex<double>(1);
    brute_force_apply(amp, n, sequence, ops);
    return amp;
}

} // namespace nbl
