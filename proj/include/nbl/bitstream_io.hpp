#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nbl/extractor.hpp"

namespace nbl {

// Packed bitstream format: little-endian bit order within bytes, the first
// emitted bit in the least significant bit of byte 0. Metadata lives in a
// JSON sidecar at "<path>.json". See docs/FORMATS.md.

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n_bits);

std::filesystem::path sidecar_path(const std::filesystem::path& bits_path);

/// Writes the packed bits to `path` and the sidecar to `path`.json.
/// `run_config`, when non-null, is echoed into the sidecar verbatim.
void write_bitstream_file(const std::filesystem::path& path, const BitStream& stream,
                          const nlohmann::json* run_config = nullptr);

/// Reads bits + provenance back; throws std::runtime_error on a missing or
/// malformed file/sidecar pair.
BitStream read_bitstream_file(const std::filesystem::path& path);

/// Atomically replaces `path` with `content` (temp file + rename).
void atomic_write(const std::filesystem::path& path, const std::string& content);

} // namespace nbl
