#include "forcemap/cspace.hpp"
#include "forcemap/kinematics.hpp"
#include "forcemap/pipeline.hpp"
#include "forcemap/scene.hpp"

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

using namespace forcemap;

namespace {

const Scene& exampleScene()
{
    static const Scene scene = loadScene(FORCEMAP_SCENES_DIR "/paper_scene.json");
    return scene;
}

const PreparedScene& prepared()
{
    static const PreparedScene p = prepareScene(exampleScene());
    return p;
}

const ForceMap& exampleMap()
{
    static const ForceMap map = buildForceMap(exampleScene(), {});
    return map;
}

std::vector<std::array<double, 2>> randomConfigurations(std::size_t n)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    std::vector<std::array<double, 2>> qs(n);
    for (auto& q : qs)
        q = {u(rng), u(rng)};
    return qs;
}

void BM_Backbone(benchmark::State& state)
{
    const auto& robot = prepared().robot;
    const auto qs = randomConfigurations(1024);
    std::vector<geometry::Vec2> out;
    std::size_t i = 0;
    for (auto _ : state)
    {
        kinematics::backboneInto(qs[i++ & 1023], robot, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_Backbone);

void BM_ChiExact(benchmark::State& state)
{
    const auto& p = prepared();
    const auto qs = randomConfigurations(1024);
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(cspace::chiExact(qs[i++ & 1023], p.robot, p.grown));
}
BENCHMARK(BM_ChiExact);

void BM_ChiFast(benchmark::State& state)
{
    const auto& regions = exampleMap().regions;
    const auto qs = randomConfigurations(1024);
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(cspace::chiFast(qs[i++ & 1023], regions));
}
BENCHMARK(BM_ChiFast);

void BM_BuildCObs(benchmark::State& state)
{
    const auto& p = prepared();
    const double step = static_cast<double>(state.range(0)) * std::numbers::pi / 180.0;
    const auto grid = cspace::JointGrid::uniform(p.robot, step);
    for (auto _ : state)
        benchmark::DoNotOptimize(cspace::buildCObs(p.robot, p.grown, grid).unsafeCount());
    state.counters["nodes"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_BuildCObs)->Arg(5)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_BuildUnsafeSet(benchmark::State& state)
{
    const auto& cobs = exampleMap().cobs;
    for (auto _ : state)
        benchmark::DoNotOptimize(cspace::buildUnsafeSet(cobs, exampleScene().cAlpha).size());
}
BENCHMARK(BM_BuildUnsafeSet)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
