#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nbl/opcount.hpp"
#include "nbl/state.hpp"

namespace nbl {

/// Single-noise-bit gate, a 2x2 complex matrix acting on one coefficient
/// pair. Row-major: (a', b') = ((g00, g01), (g10, g11)) (a, b).
template <class Real>
struct Gate2x2 {
    using Complex = std::complex<Real>;
    std::string name;
    Complex g00, g01, g10, g11;

    bool is_unitary(Real tol = Real(1e-12)) const {
        const Real c0 = std::norm(g00) + std::norm(g10);
        const Real c1 = std::norm(g01) + std::norm(g11);
        const Complex cross = std::conj(g00) * g01 + std::conj(g10) * g11;
        return std::abs(c0 - Real(1)) <= tol && std::abs(c1 - Real(1)) <= tol &&
               std::abs(cross) <= tol;
    }
};

template <class Real>
Gate2x2<Real> gate_by_name(std::string_view name) {
    using C = std::complex<Real>;
    const Real h = Real(1) / std::sqrt(Real(2));
    if (name == "X") return {"X", C(0), C(1), C(1), C(0)};
    if (name == "Z") return {"Z", C(1), C(0), C(0), C(-1)};
    if (name == "H") return {"H", C(h), C(h), C(h), C(-h)};
    if (name == "S") return {"S", C(1), C(0), C(0), C(0, 1)};
    if (name == "T") return {"T", C(1), C(0), C(0), C(h, h)};
    throw std::invalid_argument("gate_by_name: unknown gate \"" + std::string(name) + "\"");
}

/// Updates one coefficient pair in place. Always runs the general dense
/// path: exactly 4 multiplications + 2 additions, for any gate and any N.
template <class Real>
void apply_gate(ProductFormState<Real>& state, std::size_t bit, const Gate2x2<Real>& g,
                OpCount& ops) {
    if (bit >= state.size())
        throw std::out_of_range("apply_gate: target bit out of range");
    const auto a = state.a(bit);
    const auto b = state.b(bit);
    state.set_pair(bit, g.g00 * a + g.g01 * b, g.g10 * a + g.g11 * b);
    ops.mul += 4;
    ops.add += 2;
}

/// Measured cost of one gate application, in counted operations.
template <class Real>
std::uint64_t gate_cost(const Gate2x2<Real>& g) {
    auto scratch = ProductFormState<Real>::full_superposition(1);
    OpCount ops;
    apply_gate(scratch, 0, g, ops);
    return ops.total();
}

} // namespace nbl
