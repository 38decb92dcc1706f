#pragma once
/**
 * @file    cspace.hpp
 * @brief   Configuration-space obstacle grid, its connected components,
 *          and the continuous force-unsafe region used for fast queries.
 */

#include "forcemap/alpha_shape.hpp"
#include "forcemap/geometry.hpp"
#include "forcemap/kinematics.hpp"
#include "forcemap/polygon_index.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace forcemap::cspace {

using geometry::DilatedRegion;
using kinematics::RobotModel;

struct JointAxis
{
    double qMin{0.0};
    double step{0.0}; ///< radians
    std::size_t count{0};

    [[nodiscard]] double value(std::size_t k) const noexcept { return qMin + step * static_cast<double>(k); }
    [[nodiscard]] double qMax() const noexcept { return value(count - 1); }
};

/// Cartesian product of uniform per-joint sample vectors.
class JointGrid
{
  public:
    JointGrid() = default;
    explicit JointGrid(std::vector<JointAxis> axes);

    /// Covers every joint's limits at the given resolution; the range must be a whole number of steps.
    static JointGrid uniform(const RobotModel& robot, double resolution);

    [[nodiscard]] const std::vector<JointAxis>& axes() const noexcept { return axes_; }
    [[nodiscard]] std::size_t dims() const noexcept { return axes_.size(); }
    [[nodiscard]] std::size_t size() const noexcept;

    /// Row-major flat index; the last axis varies fastest.
    [[nodiscard]] std::size_t flatIndex(std::span<const std::size_t> k) const noexcept;
    void unflatten(std::size_t flat, std::span<std::size_t> k) const noexcept;
    void configuration(std::size_t flat, std::span<double> q) const noexcept;

  private:
    std::vector<JointAxis> axes_;
};

/// Binary occupancy over a JointGrid; 1 marks a force-unsafe configuration.
class CObsGrid
{
  public:
    CObsGrid() = default;
    CObsGrid(JointGrid grid, std::vector<std::uint8_t> bits);

    [[nodiscard]] const JointGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    [[nodiscard]] bool at(std::size_t flat) const noexcept { return bits_[flat] != 0; }
    [[nodiscard]] bool at(std::size_t k1, std::size_t k2) const noexcept
    {
        return bits_[k1 * grid_.axes()[1].count + k2] != 0;
    }
    [[nodiscard]] std::size_t unsafeCount() const noexcept;
    [[nodiscard]] double unsafeFraction() const noexcept;

    bool operator==(const CObsGrid& other) const noexcept { return bits_ == other.bits_; }

  private:
    JointGrid grid_;
    std::vector<std::uint8_t> bits_;
};

/// 1 iff some backbone point of q lies in the grown obstacle region.
bool chiExact(std::span<const double> q, const RobotModel& robot, const DilatedRegion& region);

/// Labels every grid node with chiExact; threads = 0 uses the hardware concurrency.
CObsGrid buildCObs(const RobotModel& robot, const DilatedRegion& region, const JointGrid& grid, unsigned threads = 1);

struct GridComponent
{
    std::vector<std::array<std::size_t, 2>> cells; ///< (k1, k2), row-major order
    std::vector<geometry::Vec2> points;            ///< (q1, q2) in radians
};

/// 4-connected components of unsafe cells of a two-joint grid, ordered by their first cell.
std::vector<GridComponent> connectedComponents(const CObsGrid& grid);

struct UnsafeRegion
{
    SimplePolygon polygon;
    double alpha{0.0};
    std::size_t sourcePoints{0};
    AlphaOutcome outcome{AlphaOutcome::Selected};
    double containment{1.0};
};

/**
 * Union of reconstructed polygons in joint space. Immutable; queries are
 * bounding-box filtered and band-indexed per polygon.
 */
class UnsafeRegionSet
{
  public:
    UnsafeRegionSet() = default;
    explicit UnsafeRegionSet(std::vector<UnsafeRegion> regions, std::vector<std::string> warnings = {});

    [[nodiscard]] const std::vector<UnsafeRegion>& regions() const noexcept { return regions_; }
    [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    [[nodiscard]] std::size_t size() const noexcept { return regions_.size(); }
    [[nodiscard]] bool empty() const noexcept { return regions_.empty(); }

    [[nodiscard]] bool contains(geometry::Vec2 q) const noexcept;

  private:
    std::vector<UnsafeRegion> regions_;
    std::vector<geometry::PolygonIndex> index_;
    std::vector<std::string> warnings_;
};

UnsafeRegionSet buildUnsafeSet(const CObsGrid& grid, double cAlpha, const AlphaSchedule& schedule = {});

/// 1 iff the joint-space point q is inside or on any reconstructed polygon.
inline bool chiFast(std::span<const double> q, const UnsafeRegionSet& regions) noexcept
{
    return regions.contains({q[0], q[1]});
}

} // namespace forcemap::cspace
