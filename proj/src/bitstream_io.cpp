#include "nbl/bitstream_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "nbl/version.hpp"

namespace nbl {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json provenance_json(const GeneratorProvenance& p) {
    return ordered_json{{"seed", p.ou.seed},
                        {"rho", p.ou.rho},
                        {"sigma", p.ou.sigma},
                        {"decimation", p.decimation},
                        {"zero_events", p.zero_events}};
}

GeneratorProvenance provenance_from_json(const nlohmann::json& j) {
    GeneratorProvenance p;
    p.ou.seed = j.at("seed").get<std::uint64_t>();
    p.ou.rho = j.at("rho").get<double>();
    p.ou.sigma = j.at("sigma").get<double>();
    p.decimation = j.at("decimation").get<int>();
    p.zero_events = j.at("zero_events").get<std::uint64_t>();
    return p;
}

} // namespace

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            bytes[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    return bytes;
}

std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n_bits) {
    if (bytes.size() * 8 < n_bits)
        throw std::runtime_error("unpack_bits: byte buffer shorter than bit count");
    std::vector<std::uint8_t> bits(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i)
        bits[i] = (bytes[i / 8] >> (i % 8)) & 1u;
    return bits;
}

std::filesystem::path sidecar_path(const std::filesystem::path& bits_path) {
    auto p = bits_path;
    p += ".json";
    return p;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_bitstream_file(const std::filesystem::path& path, const BitStream& stream,
                          const nlohmann::json* run_config) {
    const auto bytes = pack_bits(stream.bits);
    atomic_write(path, std::string(bytes.begin(), bytes.end()));

    ordered_json meta;
    meta["version"] = std::string(kVersion);
    meta["n_bits"] = stream.bits.size();
    meta["bit_order"] = "lsb-first";
    meta["generators"] = ordered_json::array();
    for (const auto& src : stream.sources)
        meta["generators"].push_back(provenance_json(src));
    if (run_config)
        meta["config"] = *run_config;
    atomic_write(sidecar_path(path), meta.dump(2) + "\n");
}

BitStream read_bitstream_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open bitstream: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());

    std::ifstream meta_in(sidecar_path(path));
    if (!meta_in)
        throw std::runtime_error("missing sidecar: " + sidecar_path(path).string());
    nlohmann::json meta;
    try {
        meta_in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed sidecar: " + std::string(e.what()));
    }

    BitStream stream;
    try {
        stream.bits = unpack_bits(bytes, meta.at("n_bits").get<std::size_t>());
        for (const auto& g : meta.at("generators"))
            stream.sources.push_back(provenance_from_json(g));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed sidecar: " + std::string(e.what()));
    }
    return stream;
}

} // namespace nbl
