#include "forcemap/forcemodel.hpp"

#include "forcemap/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace forcemap::force {

void ElasticObstacle::validate() const
{
    if (!(stiffness > 0.0))
        throw InvalidGeometry(fmt::format("obstacle {}: stiffness must be positive", id));
    if (!(forceLimit > 0.0))
        throw InvalidGeometry(fmt::format("obstacle {}: force limit must be positive", id));
    if (!(safetyFactor > 0.0 && safetyFactor <= 1.0))
        throw InvalidGeometry(fmt::format("obstacle {}: safety factor must lie in (0, 1]", id));
    if (contactFacet >= shape.size())
        throw InvalidGeometry(fmt::format("obstacle {}: contact facet index out of range", id));
}

double maxDeflection(double forceLimit, double safetyFactor, double stiffness)
{
    if (!(forceLimit > 0.0 && stiffness > 0.0 && safetyFactor > 0.0 && safetyFactor <= 1.0))
        throw InvalidGeometry("max deflection needs F_max > 0, k_env > 0 and delta in (0, 1]");
    return LinearForceLaw{stiffness}.deflection(forceLimit) / safetyFactor;
}

ConvexPolygon insetPolygon(const ConvexPolygon& shape, double depth)
{
    std::vector<geometry::UnitHalfspace> hs = shape.halfspaces();
    for (auto& h : hs)
        h = geometry::halfspaceOffset(h, depth);
    return geometry::polygonFromHalfspaces(hs);
}

Fodr buildFodr(const ElasticObstacle& obstacle)
{
    obstacle.validate();
    const double depth = maxDeflection(obstacle.forceLimit, obstacle.safetyFactor, obstacle.stiffness);
    try
    {
        return {insetPolygon(obstacle.shape, depth), obstacle.id, depth};
    }
    catch (const EmptyIntersection&)
    {
        throw ObstacleConsumed(obstacle.id,
                               fmt::format("obstacle {}: admissible deflection {:.6g} m consumes the whole obstacle",
                                           obstacle.id, depth));
    }
}

double contactDistance(Vec2 p, const ElasticObstacle& obstacle) noexcept
{
    const auto& v = obstacle.shape.vertices();
    const Vec2 a = v[obstacle.contactFacet];
    const Vec2 b = v[(obstacle.contactFacet + 1) % v.size()];
    const geometry::UnitHalfspace facet = obstacle.shape.facet(obstacle.contactFacet);
    const double plane = facet.signedDistance(p);
    const Vec2 ab = b - a;
    const double t = geometry::dot(p - a, ab) / geometry::dot(ab, ab);
    if ((t >= 0.0 && t <= 1.0) || plane < 0.0)
        return plane;
    return geometry::distanceToSegment(p, a, b);
}

double pointForce(Vec2 p, const ElasticObstacle& obstacle, double thickness) noexcept
{
    return obstacle.safetyFactor * obstacle.law().force(thickness - contactDistance(p, obstacle));
}

ContactForceReading contactForce(std::span<const Vec2> backbone, const ElasticObstacle& obstacle, double thickness)
{
    if (backbone.empty())
        throw InvalidGeometry("contact force needs a non-empty backbone");
    ContactForceReading reading{obstacle.id, 0.0, 0};
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < backbone.size(); ++k)
    {
        const double n = contactDistance(backbone[k], obstacle);
        if (n < closest)
        {
            closest = n;
            reading.deepestPointIndex = k;
        }
    }
    reading.force = obstacle.safetyFactor * obstacle.law().force(thickness - closest);
    return reading;
}

bool forceSafeByThreshold(const ContactForceReading& reading, double forceLimit) noexcept
{
    return reading.force < forceLimit;
}

geometry::DilatedRegion growObstacles(std::span<const Fodr> fodrs, double thickness)
{
    std::vector<geometry::SimplePolygon> bases;
    bases.reserve(fodrs.size());
    for (const Fodr& f : fodrs)
        bases.emplace_back(f.shape);
    return {std::move(bases), thickness};
}

} // namespace forcemap::force
