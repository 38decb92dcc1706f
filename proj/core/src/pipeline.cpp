#include "forcemap/pipeline.hpp"

#include <chrono>

namespace forcemap {

ForceMap buildForceMap(const Scene& scene, const BuildOptions& options, BuildTimings* timings)
{
    using Clock = std::chrono::steady_clock;
    scene.validate();
    const PreparedScene prepared = prepareScene(scene);
    const auto grid = cspace::JointGrid::uniform(prepared.robot, scene.resolutionRad());

    const auto t0 = Clock::now();
    ForceMap map{scene, sceneHash(scene), cspace::buildCObs(prepared.robot, prepared.grown, grid, options.threads), {}};
    const auto t1 = Clock::now();
    map.regions = cspace::buildUnsafeSet(map.cobs, scene.cAlpha, options.schedule);
    const auto t2 = Clock::now();

    if (timings != nullptr)
    {
        timings->cobsSeconds = std::chrono::duration<double>(t1 - t0).count();
        timings->polygonSeconds = std::chrono::duration<double>(t2 - t1).count();
    }
    return map;
}

} // namespace forcemap
