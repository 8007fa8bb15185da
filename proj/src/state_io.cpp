#include "nbl/state_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nbl/gates.hpp"

namespace nbl {

namespace {

std::complex<double> complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("state file: complex values are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

} // namespace

StateDescription parse_state_json(const nlohmann::json& j) {
    StateDescription d;
    d.n = j.at("n").get<std::size_t>();
    if (d.n == 0) throw std::invalid_argument("state file: n must be >= 1");
    if (j.contains("master_seed")) d.master_seed = j["master_seed"].get<std::uint64_t>();

    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "explicit") {
        d.kind = StateDescription::Kind::explicit_set;
        for (const auto& s : j.at("members"))
            d.members.push_back(BitString::parse(s.get<std::string>()));
        for (const auto& m : d.members)
            if (m.size() != d.n)
                throw std::invalid_argument("state file: member length != n");
    } else if (kind == "product") {
        d.kind = StateDescription::Kind::product;
        const auto& pairs = j.at("pairs");
        if (pairs.size() != d.n)
            throw std::invalid_argument("state file: need exactly n coefficient pairs");
        for (const auto& p : pairs) {
            if (!p.is_array() || p.size() != 2)
                throw std::invalid_argument("state file: each pair is [[re,im],[re,im]]");
            d.pairs.emplace_back(complex_from_json(p[0]), complex_from_json(p[1]));
        }
    } else if (kind == "full_superposition") {
        d.kind = StateDescription::Kind::full_superposition;
    } else {
        throw std::invalid_argument("state file: unknown kind \"" + kind + "\"");
    }
    return d;
}

StateDescription load_state_file(const std::string& path) {
    return parse_state_json(load_json(path));
}

SuperpositionState build_state(const StateDescription& d) {
    if (d.kind == StateDescription::Kind::explicit_set)
        return ExplicitState(d.n, d.members);
    return build_product_state<double>(d);
}

GateSequence parse_gates_json(const nlohmann::json& j) {
    GateSequence seq;
    for (const auto& g : j.at("gates")) {
        GateOp op;
        op.target = g.at("target").get<std::size_t>();
        if (g.contains("name")) {
            op.gate = gate_by_name<double>(g["name"].get<std::string>());
        } else if (g.contains("entries")) {
            const auto& e = g["entries"];
            if (!e.is_array() || e.size() != 4)
                throw std::invalid_argument(
                    "gate file: entries are [g00, g01, g10, g11] as [re,im]");
            op.gate = {"custom", complex_from_json(e[0]), complex_from_json(e[1]),
                       complex_from_json(e[2]), complex_from_json(e[3])};
        } else {
            throw std::invalid_argument("gate file: each gate needs \"name\" or \"entries\"");
        }
        seq.push_back(std::move(op));
    }
    return seq;
}

GateSequence load_gate_file(const std::string& path) {
    return parse_gates_json(load_json(path));
}

} // namespace nbl
