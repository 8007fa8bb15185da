#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "nbl/bitstring.hpp"
#include "nbl/hyperspace.hpp"
#include "nbl/opcount.hpp"

namespace nbl {

/// Unordered set of member strings, each implicitly with amplitude 1.
struct ExplicitState {
    std::size_t n = 0;
    std::vector<BitString> members;

    ExplicitState(std::size_t n_bits, std::vector<BitString> strings)
        : n(n_bits), members(std::move(strings)) {
        if (members.empty())
            throw std::invalid_argument("ExplicitState: member set must be non-empty");
        for (const auto& m : members)
            if (m.size() != n)
                throw std::invalid_argument("ExplicitState: member length mismatch");
        auto sorted = members;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("ExplicitState: duplicate member string");
    }
};

/// Product-form superposition: per noise bit a coefficient pair (a_i, b_i),
/// representing sum_b (prod_i coeff_i(b_i)) |b>. Templated on the scalar so
/// long runs can use extended precision.
template <class Real>
class ProductFormState {
  public:
    using Complex = std::complex<Real>;

    /// All pairs (1, 1): the uniform superposition of all 2^N strings.
    static ProductFormState full_superposition(std::size_t n) {
        return ProductFormState(std::vector<std::pair<Complex, Complex>>(
            n, {Complex(1), Complex(1)}));
    }

    /// Single basis string: pair i is (1, 0) when c_i = 0, (0, 1) when c_i = 1.
    static ProductFormState basis(const BitString& c) {
        std::vector<std::pair<Complex, Complex>> pairs(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            pairs[i] = c[i] ? std::pair{Complex(0), Complex(1)}
                            : std::pair{Complex(1), Complex(0)};
        return ProductFormState(std::move(pairs));
    }

    explicit ProductFormState(std::vector<std::pair<Complex, Complex>> pairs) {
        if (pairs.empty())
            throw std::invalid_argument("ProductFormState: need at least one pair");
        a_.reserve(pairs.size());
        b_.reserve(pairs.size());
        for (auto& [a, b] : pairs) {
            a_.push_back(a);
            b_.push_back(b);
        }
        unit_pairs_ = 0;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (is_unit_pair(a_[i], b_[i])) ++unit_pairs_;
    }

    std::size_t size() const noexcept { return a_.size(); }
    const Complex& a(std::size_t i) const { return a_.at(i); }
    const Complex& b(std::size_t i) const { return b_.at(i); }

    void set_pair(std::size_t i, Complex a, Complex b) {
        if (i >= a_.size())
            throw std::out_of_range("ProductFormState: pair index out of range");
        if (is_unit_pair(a_[i], b_[i])) --unit_pairs_;
        a_[i] = a;
        b_[i] = b;
        if (is_unit_pair(a_[i], b_[i])) ++unit_pairs_;
    }

    /// True when every pair is still (1, 1); evaluation then takes the
    /// cheap all-real path.
    bool all_unit() const noexcept { return unit_pairs_ == a_.size(); }

    Real pair_norm(std::size_t i) const { return std::norm(a_.at(i)) + std::norm(b_.at(i)); }

    /// Per-pair |a|^2 + |b|^2 = 1 within tol, i.e. each factor is a valid
    /// single-bit state.
    bool is_normalized(Real tol = Real(1e-9)) const {
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (std::abs(pair_norm(i) - Real(1)) > tol) return false;
        return true;
    }

    /// prod_i (|a_i| + |b_i|): per-step range of the reference-superposition
    /// signal, used by the measurement bound.
    Real range_bound() const {
        Real r = 1;
        for (std::size_t i = 0; i < a_.size(); ++i)
            r *= std::abs(a_[i]) + std::abs(b_[i]);
        return r;
    }

  private:
    static bool is_unit_pair(const Complex& a, const Complex& b) {
        return a == Complex(1) && b == Complex(1);
    }

    std::vector<Complex> a_, b_;
    std::size_t unit_pairs_ = 0;
};

using SuperpositionState = std::variant<ExplicitState, ProductFormState<double>>;

/// S(t) = sum over members of H_m(t). Costs |A|(N-1) multiplications plus
/// |A|-1 additions.
inline double superposition_value(const NoiseBitSystem& sys, const ExplicitState& state,
                                  std::uint64_t t, OpCount& ops) {
    if (state.n != sys.bit_count())
        throw std::invalid_argument("superposition_value: system size mismatch");
    double acc = hyperspace_value(sys, state.members[0], t, ops);
    for (std::size_t m = 1; m < state.members.size(); ++m) {
        acc += hyperspace_value(sys, state.members[m], t, ops);
        ++ops.add;
    }
    return acc;
}

/// S(t) = prod_i (a_i R_i^0(t) + b_i R_i^1(t)). The all-unit state runs in
/// real arithmetic at N-1 multiplications + N additions per step (2N-1 ops);
/// the general state costs 3N-1 multiplications + N additions.
template <class Real>
std::complex<Real> superposition_value(const NoiseBitSystem& sys,
                                       const ProductFormState<Real>& state, std::uint64_t t,
                                       OpCount& ops) {
    const std::size_t n = state.size();
    if (n != sys.bit_count())
        throw std::invalid_argument("superposition_value: system size mismatch");
    if (state.all_unit()) {
        Real acc = static_cast<Real>(sys.sample(0, 0, t) + sys.sample(0, 1, t));
        ++ops.add;
        for (std::size_t i = 1; i < n; ++i) {
            acc *= static_cast<Real>(sys.sample(i, 0, t) + sys.sample(i, 1, t));
            ++ops.add;
            ++ops.mul;
        }
        return std::complex<Real>(acc);
    }
    auto factor = [&](std::size_t i) {
        const Real r0 = static_cast<Real>(sys.sample(i, 0, t));
        const Real r1 = static_cast<Real>(sys.sample(i, 1, t));
        ops.mul += 2;
        ++ops.add;
        return state.a(i) * r0 + state.b(i) * r1;
    };
    std::complex<Real> acc = factor(0);
    for (std::size_t i = 1; i < n; ++i) {
        acc *= factor(i);
        ++ops.mul;
    }
    return acc;
}

inline std::complex<double> superposition_value(const NoiseBitSystem& sys,
                                                const SuperpositionState& state, std::uint64_t t,
                                                OpCount& ops) {
    return std::visit(
        [&](const auto& s) -> std::complex<double> {
            return std::complex<double>(superposition_value(sys, s, t, ops));
        },
        state);
}

/// Exact amplitude of string c in a product-form state: prod_i over the
/// selected coefficient. N counted multiplications, no noise involved.
template <class Real>
std::complex<Real> amplitude_exact(const ProductFormState<Real>& state, const BitString& c,
                                   OpCount& ops) {
    if (c.size() != state.size())
        throw std::invalid_argument("amplitude_exact: bit string length mismatch");
    std::complex<Real> acc(1);
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc *= c[i] ? state.b(i) : state.a(i);
        ++ops.mul;
    }
    return acc;
}

inline std::complex<double> amplitude_exact(const SuperpositionState& state, const BitString& c,
                                            OpCount& ops) {
    if (std::holds_alternative<ExplicitState>(state))
        throw std::invalid_argument("amplitude_exact: explicit states have no coefficient form");
    return amplitude_exact(std::get<ProductFormState<double>>(state), c, ops);
}

/// Range of |S(t)|, the V^(1/2) that enters the measurement error bound.
inline double range_bound(const SuperpositionState& state) {
    if (const auto* e = std::get_if<ExplicitState>(&state))
        return static_cast<double>(e->members.size());
    return std::get<ProductFormState<double>>(state).range_bound();
}

} // namespace nbl
