#include "forcemap/alpha_shape.hpp"

#include "forcemap/error.hpp"
#include "forcemap/polygon_index.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace forcemap::cspace {

namespace {

std::uint64_t edgeKey(std::uint32_t u, std::uint32_t v) noexcept
{
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

/// Drops vertices lying exactly on the segment between their neighbours.
std::vector<Vec2> dropCollinear(std::vector<Vec2> ring)
{
    bool changed = true;
    while (changed && ring.size() > 3)
    {
        changed = false;
        std::vector<Vec2> out;
        out.reserve(ring.size());
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            const Vec2 prev = out.empty() ? ring[(i + n - 1) % n] : out.back();
            const Vec2 next = ring[(i + 1) % n];
            const Vec2 cur = ring[i];
            if (geometry::cross(cur - prev, next - cur) == 0.0 && geometry::dot(cur - prev, next - cur) > 0.0)
            {
                changed = true;
                continue;
            }
            out.push_back(cur);
        }
        if (out.size() < 3)
            break;
        ring = std::move(out);
    }
    return ring;
}

} // namespace

AlphaComplex::AlphaComplex(std::span<const Vec2> points)
    : points_(points.begin(), points.end()), triangles_(geometry::delaunayTriangulation(points_))
{
    radii_.reserve(triangles_.size());
    for (const auto& t : triangles_)
        radii_.push_back(geometry::circumradius(points_[t.v[0]], points_[t.v[1]], points_[t.v[2]]));
}

std::optional<SimplePolygon> AlphaComplex::boundary(double alpha) const
{
    std::unordered_set<std::uint64_t> edges;
    edges.reserve(triangles_.size() * 3);
    for (std::size_t i = 0; i < triangles_.size(); ++i)
    {
        if (radii_[i] > alpha)
            continue;
        const auto& v = triangles_[i].v;
        for (int k = 0; k < 3; ++k)
            edges.insert(edgeKey(v[k], v[(k + 1) % 3]));
    }
    if (edges.empty())
        return std::nullopt;

    // Boundary edges have no reversed twin; each boundary vertex must have exactly one successor.
    std::unordered_map<std::uint32_t, std::uint32_t> next;
    std::vector<std::uint32_t> starts;
    for (const std::uint64_t e : edges)
    {
        const auto u = static_cast<std::uint32_t>(e >> 32);
        const auto v = static_cast<std::uint32_t>(e & 0xffffffffu);
        if (edges.contains(edgeKey(v, u)))
            continue;
        if (!next.emplace(u, v).second)
            return std::nullopt;
        starts.push_back(u);
    }
    std::sort(starts.begin(), starts.end());

    std::vector<Vec2> outer;
    int outerCount = 0;
    std::unordered_set<std::uint32_t> seen;
    for (const std::uint32_t s : starts)
    {
        if (seen.contains(s))
            continue;
        std::vector<Vec2> ring;
        std::uint32_t u = s;
        do
        {
            seen.insert(u);
            ring.push_back(points_[u]);
            const auto it = next.find(u);
            if (it == next.end())
                return std::nullopt;
            u = it->second;
        } while (u != s && !seen.contains(u));
        if (u != s)
            return std::nullopt;
        if (geometry::signedArea2(ring) > 0.0)
        {
            ++outerCount;
            outer = std::move(ring);
        }
    }
    if (outerCount != 1)
        return std::nullopt;

    try
    {
        return SimplePolygon(dropCollinear(std::move(outer)));
    }
    catch (const InvalidGeometry&)
    {
        return std::nullopt;
    }
}

std::optional<SimplePolygon> alphaShape(std::span<const Vec2> points, double alpha)
{
    return AlphaComplex(points).boundary(alpha);
}

std::string_view toString(AlphaOutcome outcome) noexcept
{
    switch (outcome)
    {
    case AlphaOutcome::Selected:
        return "selected";
    case AlphaOutcome::DegenerateFallback:
        return "degenerate-fallback";
    case AlphaOutcome::ConvexHullFallback:
        return "convex-hull-fallback";
    }
    return "unknown";
}

SimplePolygon bufferedSegmentHull(std::span<const Vec2> points, double halfWidth)
{
    if (points.empty())
        throw DegenerateInput("cannot buffer an empty point set");
    if (!(halfWidth > 0.0))
        throw InvalidGeometry("buffer half-width must be positive");
    const geometry::Box b = geometry::boundingBox(points);
    return SimplePolygon({{b.min.x - halfWidth, b.min.y - halfWidth},
                          {b.max.x + halfWidth, b.min.y - halfWidth},
                          {b.max.x + halfWidth, b.max.y + halfWidth},
                          {b.min.x - halfWidth, b.max.y + halfWidth}});
}

double containmentFraction(std::span<const Vec2> points, const SimplePolygon& polygon)
{
    if (points.empty())
        return 1.0;
    const geometry::PolygonIndex index(polygon);
    std::size_t inside = 0;
    for (const Vec2& p : points)
        inside += index.contains(p) ? 1 : 0;
    return static_cast<double>(inside) / static_cast<double>(points.size());
}

AlphaSelection selectAlpha(std::span<const Vec2> points, double deltaQ, double cAlpha, const AlphaSchedule& schedule)
{
    if (!(cAlpha > 0.0) || !(deltaQ > 0.0))
        throw InvalidGeometry("alpha selection needs c_alpha > 0 and deltaQ > 0");

    auto degenerate = [&]() {
        SimplePolygon poly = bufferedSegmentHull(points, deltaQ / 2.0);
        return AlphaSelection{0.0, poly, AlphaOutcome::DegenerateFallback, 0, containmentFraction(points, poly)};
    };
    if (points.size() < 3 || geometry::convexHull({points.begin(), points.end()}).size() < 3)
        return degenerate();

    std::optional<AlphaComplex> complex;
    try
    {
        complex.emplace(points);
    }
    catch (const DegenerateInput&)
    {
        return degenerate();
    }

    const double alpha0 = cAlpha * deltaQ;
    for (int k = 0; k < schedule.maxSteps; ++k)
    {
        const double alpha = alpha0 * std::pow(schedule.growth, k);
        std::optional<SimplePolygon> poly = complex->boundary(alpha);
        if (!poly)
            continue;
        const double frac = containmentFraction(points, *poly);
        if (frac >= schedule.minContainment)
            return {alpha, std::move(*poly), AlphaOutcome::Selected, k + 1, frac};
    }

    SimplePolygon hull(geometry::convexHull({points.begin(), points.end()}));
    return {std::numeric_limits<double>::infinity(), hull, AlphaOutcome::ConvexHullFallback, schedule.maxSteps,
            containmentFraction(points, hull)};
}

} // namespace forcemap::cspace
