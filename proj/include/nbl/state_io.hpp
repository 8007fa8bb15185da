#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nbl/brute_force.hpp"
#include "nbl/state.hpp"

namespace nbl {

/// Parsed state description file. Kept representation-neutral so callers can
/// build the state at whatever scalar precision they run with.
struct StateDescription {
    enum class Kind { explicit_set, product, full_superposition };

    std::size_t n = 0;
    std::optional<std::uint64_t> master_seed;
    Kind kind = Kind::full_superposition;
    std::vector<BitString> members;
    std::vector<std::pair<std::complex<double>, std::complex<double>>> pairs;
};

StateDescription parse_state_json(const nlohmann::json& j);
StateDescription load_state_file(const std::string& path);

SuperpositionState build_state(const StateDescription& d);

template <class Real>
ProductFormState<Real> build_product_state(const StateDescription& d) {
    using C = std::complex<Real>;
    if (d.kind == StateDescription::Kind::full_superposition)
        return ProductFormState<Real>::full_superposition(d.n);
    if (d.kind != StateDescription::Kind::product)
        throw std::invalid_argument("build_product_state: explicit states have no product form");
    std::vector<std::pair<C, C>> pairs;
    pairs.reserve(d.pairs.size());
    for (const auto& [a, b] : d.pairs)
        pairs.emplace_back(C(static_cast<Real>(a.real()), static_cast<Real>(a.imag())),
                           C(static_cast<Real>(b.real()), static_cast<Real>(b.imag())));
    return ProductFormState<Real>(std::move(pairs));
}

GateSequence parse_gates_json(const nlohmann::json& j);
GateSequence load_gate_file(const std::string& path);

} // namespace nbl
