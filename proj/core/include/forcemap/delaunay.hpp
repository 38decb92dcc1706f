#pragma once

#include "forcemap/geometry.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace forcemap::geometry {

/// Counter-clockwise vertex indices into the triangulated point list.
struct Triangle
{
    std::array<std::uint32_t, 3> v{};
};

/**
 * Delaunay triangulation by incremental Bowyer-Watson insertion.
 *
 * Input coordinates are snapped to a 2^24 integer lattice over their
 * bounding box so orientation and in-circle tests are evaluated exactly in
 * 128-bit arithmetic. Cocircular inputs (regular grids) therefore produce a
 * valid, deterministic triangulation. Points that coincide after snapping
 * are triangulated once, using the first occurrence.
 *
 * Throws DegenerateInput when fewer than three non-collinear points remain.
 */
std::vector<Triangle> delaunayTriangulation(std::span<const Vec2> points);

/// Radius of the circle through the three points (+inf if collinear).
double circumradius(Vec2 a, Vec2 b, Vec2 c) noexcept;

} // namespace forcemap::geometry
