#pragma once
/**
 * @file    alpha_shape.hpp
 * @brief   Alpha-shape reconstruction of planar point clouds.
 *
 * Convention: alpha is the probe-disk radius. A Delaunay triangle belongs
 * to the alpha complex iff its circumradius is <= alpha, so alpha -> inf
 * recovers the convex hull. The returned polygon is the outer boundary of
 * the kept triangles; interior holes are filled.
 */

#include "forcemap/delaunay.hpp"
#include "forcemap/geometry.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace forcemap::cspace {

using geometry::SimplePolygon;
using geometry::Vec2;

/// Delaunay triangulation with cached circumradii, reusable across alpha values.
class AlphaComplex
{
  public:
    /// Throws DegenerateInput for fewer than three non-collinear points.
    explicit AlphaComplex(std::span<const Vec2> points);

    /// Outer boundary for the given alpha, or nullopt if the kept triangles
    /// are empty, disconnected, or touch themselves at a vertex.
    [[nodiscard]] std::optional<SimplePolygon> boundary(double alpha) const;

    [[nodiscard]] std::size_t triangleCount() const noexcept { return triangles_.size(); }

  private:
    std::vector<Vec2> points_;
    std::vector<geometry::Triangle> triangles_;
    std::vector<double> radii_;
};

/// One-shot alpha shape.
std::optional<SimplePolygon> alphaShape(std::span<const Vec2> points, double alpha);

enum class AlphaOutcome
{
    Selected,           ///< an alpha in the sweep produced a valid polygon
    DegenerateFallback, ///< collinear or tiny input, buffered segment hull
    ConvexHullFallback  ///< no alpha in the sweep was valid
};

std::string_view toString(AlphaOutcome outcome) noexcept;

struct AlphaSchedule
{
    double growth{1.5};
    int maxSteps{20};
    double minContainment{0.999};
};

struct AlphaSelection
{
    double alpha{0.0}; ///< 0 for the degenerate fallback, +inf for the hull fallback
    SimplePolygon polygon;
    AlphaOutcome outcome{AlphaOutcome::Selected};
    int iterations{0};
    double containment{1.0}; ///< fraction of input points inside or on the polygon
};

/**
 * Geometric sweep alpha_k = c_alpha * deltaQ * growth^k returning the first
 * valid polygon that also contains at least minContainment of the points.
 */
AlphaSelection selectAlpha(std::span<const Vec2> points, double deltaQ, double cAlpha, const AlphaSchedule& schedule = {});

/// Bounding rectangle of a collinear point set, grown by halfWidth on every side.
SimplePolygon bufferedSegmentHull(std::span<const Vec2> points, double halfWidth);

/// Fraction of points inside or on the polygon.
double containmentFraction(std::span<const Vec2> points, const SimplePolygon& polygon);

} // namespace forcemap::cspace
