#pragma once
/**
 * @file    mapfile.hpp
 * @brief   Binary persistence of a built ForceMap.
 *
 * Layout (little-endian):
 *
 *     "FMAP" | u32 version | u64 scene hash
 *     u32 dims | per axis: f64 q_min, f64 step, u64 count
 *     u64 length | canonical scene JSON
 *     u64 cells  | C_obs bits, row-major, LSB first, padded to a byte
 *     u32 polygons | per polygon: f64 alpha, u8 outcome, u64 source points,
 *                    f64 containment, u32 vertices, f64 (q1, q2) pairs
 *     u32 warnings | per warning: u32 length, bytes
 *     u64 FNV-1a checksum of everything above
 */

#include "forcemap/pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace forcemap::io {

inline constexpr std::uint32_t kMapVersion = 1;

std::string encodeMap(const ForceMap& map);

/// Throws SchemaError on a malformed, truncated or corrupted payload.
ForceMap decodeMap(std::string_view bytes);

/// Throws Error when the file cannot be written.
void saveMap(const std::filesystem::path& path, const ForceMap& map);

/// Throws MapMissing when the file is absent or unreadable, SchemaError when malformed.
ForceMap loadMap(const std::filesystem::path& path);

} // namespace forcemap::io
