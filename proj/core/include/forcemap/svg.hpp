#pragma once
/**
 * @file    svg.hpp
 * @brief   Deterministic SVG views of task space, configuration space and
 *          simulation runs.
 */

#include "forcemap/pipeline.hpp"
#include "forcemap/simharness.hpp"

#include <span>
#include <string>

namespace forcemap::io {

/// Obstacles (dark), their FODRs (light), the grown outline and optional backbone poses.
std::string renderTaskSpace(const Scene& scene, std::span<const std::vector<double>> poses = {});

/// C_obs raster in degrees with polygon overlays and an optional joint-space path.
std::string renderCSpace(const ForceMap& map, std::span<const sim::SimRecord> path = {});

/// One group per record holding the backbone; green when chi_fast = 0, red otherwise.
std::string renderSimulation(const Scene& scene, std::span<const sim::SimRecord> records);

} // namespace forcemap::io
