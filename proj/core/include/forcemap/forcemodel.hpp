#pragma once
/**
 * @file    forcemodel.hpp
 * @brief   Elastic obstacles, force-unsafe deformation regions (FODR) and
 *          simulated contact forces along a backbone.
 *
 * Each obstacle facet deflects along its inward normal. The applied force
 * is delta * psi(n) with the linear law psi(n) = k_env * n, so the maximum
 * admissible deflection is F_max / (delta * k_env) and the FODR is the
 * obstacle with every facet pushed inward by that depth.
 */

#include "forcemap/geometry.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace forcemap::force {

using geometry::ConvexPolygon;
using geometry::Vec2;

/// psi(n) = k * max(0, n); strictly monotonic for n > 0.
struct LinearForceLaw
{
    double stiffness{0.0}; ///< N/m

    [[nodiscard]] double force(double deflection) const noexcept { return deflection > 0.0 ? stiffness * deflection : 0.0; }
    [[nodiscard]] double deflection(double force) const noexcept { return force / stiffness; }
};

struct ElasticObstacle
{
    int id{0};
    ConvexPolygon shape;
    double stiffness{0.0};    ///< k_env, N/m
    double forceLimit{0.0};   ///< F_max, N
    double safetyFactor{1.0}; ///< delta in (0, 1]
    std::size_t contactFacet{0};

    void validate() const;
    [[nodiscard]] LinearForceLaw law() const noexcept { return {stiffness}; }
};

struct Fodr
{
    ConvexPolygon shape;
    int sourceId{0};
    double maxDeflection{0.0}; ///< m
};

struct ContactForceReading
{
    int obstacleId{0};
    double force{0.0};               ///< N
    std::size_t deepestPointIndex{0}; ///< backbone index of the largest force (or smallest n_k when no contact)
};

/// n_max = F_max / (delta * k_env).
double maxDeflection(double forceLimit, double safetyFactor, double stiffness);

/// Every facet moved inward by depth; throws EmptyIntersection when nothing is left.
ConvexPolygon insetPolygon(const ConvexPolygon& shape, double depth);

/// Throws ObstacleConsumed when the admissible deformation swallows the obstacle.
Fodr buildFodr(const ElasticObstacle& obstacle);

/**
 * Signed distance n_k from p to the obstacle's contact facet.
 *
 * Inside the facet's extent this is the signed plane distance (positive
 * outside). Beyond the extent, points in front of the plane use the
 * distance to the facet segment and points behind it keep the signed
 * plane distance so the force keeps growing with penetration.
 */
double contactDistance(Vec2 p, const ElasticObstacle& obstacle) noexcept;

/// F = delta * k_env * max(0, r - n_k) for a single point.
double pointForce(Vec2 p, const ElasticObstacle& obstacle, double thickness) noexcept;

/// Maximum point force over the backbone.
ContactForceReading contactForce(std::span<const Vec2> backbone, const ElasticObstacle& obstacle, double thickness);

/// Strict: a force equal to the limit is unsafe.
bool forceSafeByThreshold(const ContactForceReading& reading, double forceLimit) noexcept;

/// Union of FODRs grown by the manipulator thickness.
geometry::DilatedRegion growObstacles(std::span<const Fodr> fodrs, double thickness);

} // namespace forcemap::force
