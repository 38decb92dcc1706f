#pragma once
/**
 * @file    scene.hpp
 * @brief   Scene description (robot, obstacles, grid, alpha) and its JSON
 *          document form.
 *
 * Document fields carry their units in the key names:
 *
 *     {
 *       "description": "...",                       // optional
 *       "robot": {
 *         "segment_lengths_m": [0.122, 0.122],
 *         "thickness_m": 0.02,
 *         "backbone_samples": 150,
 *         "joint_limits_deg": [[-180, 180], [-180, 180]]
 *       },
 *       "obstacles": [
 *         { "id": 1, "vertices_m": [[x, y], ...],    // counter-clockwise, convex
 *           "k_env_N_per_m": 11.16, "F_max_N": 0.105,
 *           "delta": 0.95, "contact_facet": 0 }
 *       ],
 *       "grid":  { "resolution_deg": 1.0 },
 *       "alpha": { "c_alpha": 1.5 }
 *     }
 *
 * Facet i of an obstacle runs from vertex i to vertex i + 1.
 */

#include "forcemap/forcemodel.hpp"
#include "forcemap/kinematics.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace forcemap {

struct Scene
{
    std::string description;
    std::vector<double> segmentLengths; ///< m
    double thickness{0.02};             ///< m
    std::size_t backboneSamples{150};
    std::vector<std::array<double, 2>> jointLimitsDeg;
    std::vector<force::ElasticObstacle> obstacles;
    double resolutionDeg{1.0};
    double cAlpha{1.5};

    [[nodiscard]] kinematics::RobotModel robot() const;
    [[nodiscard]] double resolutionRad() const noexcept;

    /// Throws SchemaError describing the first violated constraint.
    void validate() const;
};

/// Throws SchemaError on malformed or invalid documents.
Scene parseScene(std::string_view json);
Scene loadScene(const std::filesystem::path& path);

/// Sorted-key, compact JSON rendering; identical scenes give identical bytes.
std::string canonicalSceneJson(const Scene& scene);

/// 64-bit FNV-1a of the canonical JSON.
std::uint64_t sceneHash(const Scene& scene);

/// FODRs and grown regions derived from a scene.
struct PreparedScene
{
    kinematics::RobotModel robot;
    std::vector<force::Fodr> fodrs;
    geometry::DilatedRegion grown;                   ///< union of all FODRs grown by r
    std::vector<geometry::DilatedRegion> perObstacle; ///< one grown FODR per obstacle
};

/// Throws ObstacleConsumed for an obstacle whose FODR is empty.
PreparedScene prepareScene(const Scene& scene);

} // namespace forcemap
