#pragma once
/**
 * @file    pipeline.hpp
 * @brief   Offline map build: scene -> FODRs -> C_obs -> unsafe polygons.
 */

#include "forcemap/cspace.hpp"
#include "forcemap/scene.hpp"

#include <cstdint>

namespace forcemap {

struct ForceMap
{
    Scene scene;
    std::uint64_t sceneHash{0};
    cspace::CObsGrid cobs;
    cspace::UnsafeRegionSet regions;
};

struct BuildOptions
{
    unsigned threads{1};
    cspace::AlphaSchedule schedule{};
};

struct BuildTimings
{
    double cobsSeconds{0.0};
    double polygonSeconds{0.0};
};

/// Throws ObstacleConsumed when an obstacle has no FODR.
ForceMap buildForceMap(const Scene& scene, const BuildOptions& options = {}, BuildTimings* timings = nullptr);

} // namespace forcemap
