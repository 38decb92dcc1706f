#pragma once
/**
 * @file    geometry.hpp
 * @brief   Planar geometry kernel: halfspaces, convex and simple polygons,
 *          signed distance, and implicit Minkowski dilation by a disk.
 *
 * Conventions:
 * - Lengths are metres in task space and radians when the same types are
 *   reused for joint-space polygons.
 * - Polygons are stored counter-clockwise without a repeated closing vertex.
 * - Boundary points classify as inside everywhere.
 */

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace forcemap::geometry {

/// Tolerance for geometric predicates.
inline constexpr double kEpsilon = 1e-9;

struct Vec2
{
    double x{0.0};
    double y{0.0};

    constexpr Vec2 operator+(Vec2 o) const noexcept { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const noexcept { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const noexcept { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const noexcept { return {x / s, y / s}; }
    constexpr Vec2 operator-() const noexcept { return {-x, -y}; }
    constexpr bool operator==(const Vec2&) const noexcept = default;
};

constexpr Vec2 operator*(double s, Vec2 v) noexcept { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) noexcept { return std::hypot(v.x, v.y); }

struct Box
{
    Vec2 min{};
    Vec2 max{};

    [[nodiscard]] bool contains(Vec2 p, double margin = 0.0) const noexcept
    {
        return p.x >= min.x - margin && p.x <= max.x + margin && p.y >= min.y - margin && p.y <= max.y + margin;
    }
    [[nodiscard]] double width() const noexcept { return max.x - min.x; }
    [[nodiscard]] double height() const noexcept { return max.y - min.y; }
};

Box boundingBox(std::span<const Vec2> points);

/// Euclidean distance from p to the closed segment [a, b].
double distanceToSegment(Vec2 p, Vec2 a, Vec2 b) noexcept;

/// Twice the signed area; positive for counter-clockwise rings.
double signedArea2(std::span<const Vec2> ring) noexcept;

/**
 * The constraint normal . x <= offset with |normal| = 1.
 */
struct UnitHalfspace
{
    Vec2 normal{};
    double offset{0.0};

    /// Normalises an arbitrary row (a, b) . x <= c.
    static UnitHalfspace fromRow(Vec2 row, double rhs);

    [[nodiscard]] double signedDistance(Vec2 p) const noexcept { return dot(normal, p) - offset; }
    [[nodiscard]] bool contains(Vec2 p, double eps = kEpsilon) const noexcept { return signedDistance(p) <= eps; }
};

/// Moves the boundary inward by depth along the normal.
UnitHalfspace halfspaceOffset(const UnitHalfspace& hs, double depth);

/**
 * Convex polygon with at least three counter-clockwise vertices and all
 * turns strictly left.
 */
class ConvexPolygon
{
  public:
    /// Accepts either orientation; throws InvalidGeometry if not strictly convex.
    explicit ConvexPolygon(std::vector<Vec2> vertices);

    [[nodiscard]] const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }

    /// Facet i runs from vertex i to vertex i+1; its outward unit normal points away from the interior.
    [[nodiscard]] UnitHalfspace facet(std::size_t i) const;
    [[nodiscard]] std::vector<UnitHalfspace> halfspaces() const;

    [[nodiscard]] double area() const noexcept;
    [[nodiscard]] double perimeter() const noexcept;
    [[nodiscard]] Vec2 centroid() const noexcept;
    [[nodiscard]] bool contains(Vec2 p, double eps = kEpsilon) const noexcept;

  private:
    std::vector<Vec2> vertices_;
};

/**
 * Simple (non self-intersecting) polygon with positive signed area.
 */
class SimplePolygon
{
  public:
    /// Reverses clockwise input; throws InvalidGeometry on self-intersection or zero area.
    explicit SimplePolygon(std::vector<Vec2> vertices);
    SimplePolygon(const ConvexPolygon& convex); // NOLINT(google-explicit-constructor)

    [[nodiscard]] const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] const Box& bounds() const noexcept { return bounds_; }
    [[nodiscard]] double area() const noexcept;

  private:
    struct Trusted
    {
    };
    SimplePolygon(std::vector<Vec2> vertices, Trusted);

    std::vector<Vec2> vertices_;
    Box bounds_;
};

/// True when no two non-adjacent edges of the closed ring touch.
bool isSimpleRing(std::span<const Vec2> ring);

/// Negative inside, zero on the boundary, positive outside.
double signedDistance(Vec2 p, const SimplePolygon& poly) noexcept;

/// Crossing-number test; points within kEpsilon of an edge count as inside.
bool pointInPolygon(Vec2 p, const SimplePolygon& poly) noexcept;

/// Vertex enumeration of a bounded halfspace intersection, returned counter-clockwise.
ConvexPolygon polygonFromHalfspaces(std::span<const UnitHalfspace> halfspaces);

/// Andrew's monotone chain; collinear points dropped. May return fewer than three points.
std::vector<Vec2> convexHull(std::vector<Vec2> points);

/**
 * Minkowski sum of a union of polygons with a disk of the given radius,
 * represented implicitly by a distance predicate.
 */
class DilatedRegion
{
  public:
    DilatedRegion() = default;
    DilatedRegion(std::vector<SimplePolygon> bases, double radius);

    [[nodiscard]] const std::vector<SimplePolygon>& bases() const noexcept { return bases_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }
    [[nodiscard]] bool empty() const noexcept { return bases_.empty(); }

    /// Minimum signed distance to the union of bases (+inf when empty).
    [[nodiscard]] double distance(Vec2 p) const noexcept;

    /// Exact membership: distance(p) <= radius.
    [[nodiscard]] bool contains(Vec2 p) const noexcept;

  private:
    std::vector<SimplePolygon> bases_;
    std::vector<Box> bounds_;
    double radius_{0.0};
};

inline bool contains(Vec2 p, const DilatedRegion& region) noexcept { return region.contains(p); }

/**
 * Polygonal outline of a convex polygon dilated by radius, for rendering.
 * Corner arcs are sampled so the sagitta stays below arcTolerance.
 */
SimplePolygon approximateDilationOutline(const ConvexPolygon& base, double radius, double arcTolerance);

/// One outline per base; every base must be convex.
std::vector<SimplePolygon> approximateDilationOutlines(const DilatedRegion& region, double arcTolerance);

} // namespace forcemap::geometry
