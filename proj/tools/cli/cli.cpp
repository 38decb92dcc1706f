#include "cli.hpp"

#include "acceptance.hpp"
#include "forcemap/error.hpp"
#include "forcemap/mapfile.hpp"
#include "forcemap/simharness.hpp"
#include "forcemap/svg.hpp"

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <fmt/format.h>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace forcemap::cli {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

/// Output that could not be written.
struct WriteFailure : Error
{
    using Error::Error;
};

/// A configuration outside the joint limits.
struct OutOfLimits : Error
{
    using Error::Error;
};

void writeFile(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out)
        throw WriteFailure(fmt::format("cannot write '{}'", path));
}

struct BuildArgs
{
    std::string scene;
    std::string out;
    unsigned threads{1};
};

int cmdBuild(const BuildArgs& a, std::ostream& out)
{
    const Scene scene = loadScene(a.scene);
    BuildTimings timings;
    const ForceMap map = buildForceMap(scene, {.threads = a.threads}, &timings);
    try
    {
        io::saveMap(a.out, map);
    }
    catch (const Error& e)
    {
        throw WriteFailure(e.what());
    }
    const auto& axes = map.cobs.grid().axes();
    out << fmt::format("dims={}x{}\n", axes[0].count, axes.size() > 1 ? axes[1].count : 1);
    out << fmt::format("scene_hash={:016x}\n", map.sceneHash);
    out << fmt::format("build_time_s={:.3f}\n", timings.cobsSeconds + timings.polygonSeconds);
    out << fmt::format("cobs_time_s={:.3f}\n", timings.cobsSeconds);
    out << fmt::format("unsafe_fraction={:.6f}\n", map.cobs.unsafeFraction());
    out << fmt::format("components={}\n", map.regions.size());
    for (std::size_t k = 0; k < map.regions.size(); ++k)
    {
        const auto& r = map.regions.regions()[k];
        out << fmt::format("component_{}_alpha={:.6g} points={} vertices={} outcome={}\n", k, r.alpha, r.sourcePoints,
                           r.polygon.size(), cspace::toString(r.outcome));
    }
    for (const auto& w : map.regions.warnings())
        out << fmt::format("warning={}\n", w);
    out << fmt::format("map={}\n", a.out);
    return kOk;
}

struct QueryArgs
{
    std::string map;
    double q1{0.0};
    double q2{0.0};
    bool exact{false};
    std::string scene;
};

void checkFresh(const ForceMap& map, const std::string& scenePath)
{
    if (scenePath.empty())
        return;
    if (sceneHash(loadScene(scenePath)) != map.sceneHash)
        throw StaleMap(fmt::format("map was built for a different scene than '{}'", scenePath));
}

int cmdQuery(const QueryArgs& a, std::ostream& out)
{
    const ForceMap map = io::loadMap(a.map);
    checkFresh(map, a.scene);
    const auto robot = map.scene.robot();
    const std::vector<double> q{a.q1 * kDegToRad, a.q2 * kDegToRad};
    if (q.size() != robot.dof() || !robot.withinLimits(q))
        throw OutOfLimits(fmt::format("configuration ({}, {}) deg is outside the joint limits", a.q1, a.q2));

    const bool fast = cspace::chiFast(q, map.regions);
    std::string line = fmt::format("verdict={} chi_fast={}", fast ? "UNSAFE" : "SAFE", fast ? 1 : 0);
    if (a.exact)
    {
        const PreparedScene prepared = prepareScene(map.scene);
        const bool exact = cspace::chiExact(q, prepared.robot, prepared.grown);
        line += fmt::format(" chi_exact={} exact_verdict={}", exact ? 1 : 0, exact ? "UNSAFE" : "SAFE");
        const auto body = kinematics::backbone(q, prepared.robot);
        for (const auto& o : map.scene.obstacles)
            line += fmt::format(" force_obs{}_N={:.6f}", o.id, force::contactForce(body, o, map.scene.thickness).force);
    }
    out << line << '\n';
    return kOk;
}

struct SimulateArgs
{
    std::string scene;
    std::string map;
    std::vector<double> amplitudeDeg{30.0, 30.0};
    std::vector<double> phaseDeg{0.0, 90.0};
    double frequency{0.0071};
    double duration{-1.0};
    double dt{1.0 / 12.8};
    std::string csv;
    std::string svg;
    std::string cspaceSvg;
};

int cmdSimulate(const SimulateArgs& a, std::ostream& out)
{
    const Scene scene = loadScene(a.scene);
    const ForceMap map = io::loadMap(a.map);
    if (map.sceneHash != sceneHash(scene))
        throw StaleMap("map was built for a different scene");

    sim::TrajectorySpec spec;
    spec.frequency = a.frequency;
    spec.duration = a.duration >= 0.0 ? a.duration : (a.frequency > 0.0 ? 1.0 / a.frequency : 0.0);
    spec.dt = a.dt;
    spec.amplitude.clear();
    spec.phase.clear();
    for (const double v : a.amplitudeDeg)
        spec.amplitude.push_back(v * kDegToRad);
    for (const double v : a.phaseDeg)
        spec.phase.push_back(v * kDegToRad);
    try
    {
        spec.validate(scene.robot());
    }
    catch (const InvalidGeometry& e)
    {
        throw SchemaError(e.what());
    }

    const auto records = sim::runSimulation(scene, &map, spec);
    std::ostringstream csv;
    sim::writeCsv(csv, scene, records);
    if (!a.csv.empty())
        writeFile(a.csv, csv.str());
    if (!a.svg.empty())
        writeFile(a.svg, io::renderSimulation(scene, records));
    if (!a.cspaceSvg.empty())
        writeFile(a.cspaceSvg, io::renderCSpace(map, records));

    out << fmt::format("steps={}\n", records.size());
    if (records.empty())
        return kOk;
    const auto s = sim::summarize(scene, records);
    out << fmt::format("unsafe_fraction={:.6f}\n", s.unsafeFraction());
    out << fmt::format("safe_to_unsafe={}\n", s.fastEnterCount);
    out << fmt::format("unsafe_to_safe={}\n", s.fastExitCount);
    out << fmt::format("soundness_violations={}\n", s.soundnessViolations);
    out << fmt::format("fast_exact_disagreements={}\n", s.fastExactDisagreements);
    out << fmt::format("max_force_N={:.6f}\n", s.maxForce);
    for (const auto& c : s.obstacles)
        out << fmt::format("obstacle_{}=unsafe_over_limit:{} unsafe_margin_band:{} unsafe_below_margin:{} "
                           "safe_under_limit:{} safe_over_limit:{} max_force_N:{:.6f}\n",
                           c.obstacleId, c.unsafeAndOverLimit, c.unsafeInMarginBand, c.unsafeBelowMargin,
                           c.safeAndUnderLimit, c.safeButOverLimit, c.maxForce);
    return kOk;
}

struct RenderArgs
{
    std::string map;
    std::string out;
    std::string space{"task"};
};

int cmdRender(const RenderArgs& a, std::ostream& out)
{
    const ForceMap map = io::loadMap(a.map);
    const std::string svg = a.space == "task" ? io::renderTaskSpace(map.scene) : io::renderCSpace(map);
    writeFile(a.out, svg);
    out << fmt::format("space={}\nsvg={}\n", a.space, a.out);
    return kOk;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Force-safe configuration-space obstacle maps for planar soft manipulators", "forcemap"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "forcemap 0.1.0");

    BuildArgs build;
    auto* buildCmd = app.add_subcommand("build", "Build and persist the force-safety map of a scene");
    buildCmd->add_option("scene", build.scene, "Scene JSON file")->required();
    buildCmd->add_option("-o,--out", build.out, "Map file to write")->required();
    buildCmd->add_option("-j,--threads", build.threads, "Worker threads (0 = all cores)")->capture_default_str();

    QueryArgs query;
    auto* queryCmd = app.add_subcommand("query", "Classify one configuration");
    queryCmd->add_option("map", query.map, "Map file")->required();
    queryCmd->add_option("q1_deg", query.q1, "Joint 1 angle in degrees")->required();
    queryCmd->add_option("q2_deg", query.q2, "Joint 2 angle in degrees")->required();
    queryCmd->add_flag("--exact", query.exact, "Also evaluate the backbone and simulated forces");
    queryCmd->add_option("--scene", query.scene, "Scene file that must match the map");

    SimulateArgs simulate;
    auto* simCmd = app.add_subcommand("simulate", "Run an open-loop sinusoidal trajectory");
    simCmd->add_option("scene", simulate.scene, "Scene JSON file")->required();
    simCmd->add_option("map", simulate.map, "Map file built from the scene")->required();
    simCmd->add_option("--amplitude-deg", simulate.amplitudeDeg, "Amplitude per joint")
        ->delimiter(',')
        ->capture_default_str();
    simCmd->add_option("--phase-deg", simulate.phaseDeg, "Phase per joint")->delimiter(',')->capture_default_str();
    simCmd->add_option("--frequency", simulate.frequency, "Frequency in Hz")->capture_default_str();
    simCmd->add_option("--duration", simulate.duration, "Duration in s (default: one period)");
    simCmd->add_option("--dt", simulate.dt, "Time step in s")->capture_default_str();
    simCmd->add_option("--csv", simulate.csv, "CSV record stream to write");
    simCmd->add_option("--svg", simulate.svg, "Task-space timelapse SVG to write");
    simCmd->add_option("--cspace-svg", simulate.cspaceSvg, "C-space map with the trajectory overlaid");

    RenderArgs render;
    auto* renderCmd = app.add_subcommand("render", "Render a map as SVG");
    renderCmd->add_option("map", render.map, "Map file")->required();
    renderCmd->add_option("-o,--out", render.out, "SVG file to write")->required();
    renderCmd->add_option("--space", render.space, "task or cspace")
        ->check(CLI::IsMember({"task", "cspace"}))
        ->capture_default_str();

    selftest::AcceptanceOptions selftestOptions;
    auto* selftestCmd = app.add_subcommand("selftest", "Run the acceptance checks on the bundled scene");
    selftestCmd->add_option("--seed", selftestOptions.seed, "Random seed")->capture_default_str();
    selftestCmd->add_option("-j,--threads", selftestOptions.threads, "Worker threads for the map build");

    // CLI11 parses in reverse order and treats "-30" as a number when no option matches.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try
    {
        if (*buildCmd)
            return cmdBuild(build, out);
        if (*queryCmd)
            return cmdQuery(query, out);
        if (*simCmd)
            return cmdSimulate(simulate, out);
        if (*renderCmd)
            return cmdRender(render, out);
        if (*selftestCmd)
            return selftest::printAcceptance(out, selftestOptions) == 0 ? kOk : kInputError;
    }
    catch (const ObstacleConsumed& e)
    {
        out << fmt::format("obstacle_id={}\n", e.obstacleId());
        err << "error: " << e.what() << '\n';
        return kObstacleConsumed;
    }
    catch (const WriteFailure& e)
    {
        err << "error: " << e.what() << '\n';
        return kWriteFailure;
    }
    catch (const OutOfLimits& e)
    {
        err << "error: " << e.what() << '\n';
        return kOutOfLimits;
    }
    catch (const StaleMap& e)
    {
        err << "error: " << e.what() << '\n';
        return kStaleMap;
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

} // namespace forcemap::cli
