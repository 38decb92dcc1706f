#include "acceptance.hpp"

#include "forcemap/error.hpp"
#include "forcemap/pipeline.hpp"
#include "forcemap/simharness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace forcemap::selftest {

namespace {

using Clock = std::chrono::steady_clock;
using geometry::Vec2;

double seconds(Clock::time_point since) { return std::chrono::duration<double>(Clock::now() - since).count(); }

// ---- independent oracles --------------------------------------------------

/// Point in a counter-clockwise convex ring, boundary inclusive.
bool oracleInsideConvex(Vec2 p, const std::vector<Vec2>& ring)
{
    for (std::size_t i = 0; i < ring.size(); ++i)
    {
        const Vec2 a = ring[i];
        const Vec2 b = ring[(i + 1) % ring.size()];
        if ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < 0.0)
            return false;
    }
    return true;
}

double oracleSegmentDistance(Vec2 p, Vec2 a, Vec2 b)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

/// Unsigned distance from p to the closed convex ring (0 inside).
double oracleDistance(Vec2 p, const std::vector<Vec2>& ring)
{
    if (oracleInsideConvex(p, ring))
        return 0.0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ring.size(); ++i)
        d = std::min(d, oracleSegmentDistance(p, ring[i], ring[(i + 1) % ring.size()]));
    return d;
}

/// Full-body test: does any disk of radius r around a backbone point touch a FODR?
/// The disk is represented by its centre and 64 boundary samples, plus the FODR
/// vertices falling inside the disk so convex corners poking in are seen.
bool oracleBodyHits(const std::vector<Vec2>& body, double r, const std::vector<std::vector<Vec2>>& fodrs)
{
    constexpr int kSamples = 64;
    for (const auto& c : body)
        for (const auto& ring : fodrs)
        {
            if (oracleInsideConvex(c, ring))
                return true;
            for (int s = 0; s < kSamples; ++s)
            {
                const double th = 2.0 * std::numbers::pi * s / kSamples;
                if (oracleInsideConvex({c.x + r * std::cos(th), c.y + r * std::sin(th)}, ring))
                    return true;
            }
            for (const auto& v : ring)
                if (std::hypot(v.x - c.x, v.y - c.y) <= r)
                    return true;
        }
    return false;
}

/// Smallest |distance to FODR union - r| over the backbone.
double oracleBandDistance(const std::vector<Vec2>& body, double r, const std::vector<std::vector<Vec2>>& fodrs)
{
    double d = std::numeric_limits<double>::infinity();
    for (const auto& c : body)
        for (const auto& ring : fodrs)
            d = std::min(d, std::abs(oracleDistance(c, ring) - r));
    return d;
}

// ---- criteria ---------------------------------------------------------------

struct Context
{
    const AcceptanceOptions& options;
    Scene scene;
    PreparedScene prepared;
    ForceMap map;
    double buildSeconds{0.0};
};

CriterionResult fodrInset(Context& ctx)
{
    constexpr double expected = 0.009904; // 0.105 / (0.95 * 11.16), rounded to the micrometre
    const double nmax = force::maxDeflection(0.105, 0.95, 11.16);
    // The inset facet must sit exactly n_max behind the original one.
    const auto& o = ctx.scene.obstacles.front();
    const auto facet = o.shape.facet(o.contactFacet);
    double inset = std::numeric_limits<double>::infinity();
    for (const auto& v : ctx.prepared.fodrs.front().shape.vertices())
        inset = std::min(inset, -facet.signedDistance(v));
    const bool ok = std::abs(nmax - expected) <= 1e-6 && std::abs(inset - nmax) <= 1e-12;
    return {1, "FODR inset", ok, fmt::format("n_max={:.9f} m, |n_max-0.009904|={:.2e} m, facet inset={:.9f} m", nmax,
                                             std::abs(nmax - expected), inset)};
}

CriterionResult soundnessSweep(Context& ctx)
{
    const auto start = Clock::now();
    const auto grid = cspace::JointGrid::uniform(ctx.prepared.robot, ctx.scene.resolutionRad());
    const auto cobs = cspace::buildCObs(ctx.prepared.robot, ctx.prepared.grown, grid, 1);
    std::size_t violations = 0;
    std::size_t safeCells = 0;
    double worst = 0.0;
    std::vector<double> q(2);
    std::vector<Vec2> body;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (cobs.at(i))
            continue;
        ++safeCells;
        grid.configuration(i, q);
        kinematics::backboneInto(q, ctx.prepared.robot, body);
        for (const auto& o : ctx.scene.obstacles)
        {
            const auto reading = force::contactForce(body, o, ctx.scene.thickness);
            worst = std::max(worst, reading.force / o.forceLimit);
            if (reading.force >= o.forceLimit)
                ++violations;
        }
    }
    const double t = seconds(start);
    const bool ok = violations == 0 && grid.size() == 361 * 361 && t < 60.0;
    return {2, "Soundness sweep", ok,
            fmt::format("grid={}x{}, chi_exact=0 cells={}, violations={}, max F/F_max on safe cells={:.4f}",
                        grid.axes()[0].count, grid.axes()[1].count, safeCells, violations, worst),
            t};
}

CriterionResult queryLatency(Context& ctx)
{
    std::mt19937_64 rng(ctx.options.seed);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    std::vector<double> qs(2 * ctx.options.latencyQueries);
    for (auto& v : qs)
        v = u(rng);
    const auto start = Clock::now();
    std::size_t unsafe = 0;
    for (std::size_t i = 0; i < qs.size(); i += 2)
        unsafe += cspace::chiFast(std::span<const double>(qs).subspan(i, 2), ctx.map.regions) ? 1 : 0;
    const double t = seconds(start);
    const double meanUs = t / static_cast<double>(ctx.options.latencyQueries) * 1e6;
    const bool ok = meanUs <= 223.0 && t < 30.0;
    return {3, "Query latency", ok,
            fmt::format("{} queries, mean chi_fast={:.3f} us (ceiling 223 us, soft target 5 us), unsafe hits={}",
                        ctx.options.latencyQueries, meanUs, unsafe),
            t};
}

CriterionResult reconstructionFidelity(Context& ctx)
{
    const auto start = Clock::now();
    const auto& grid = ctx.map.cobs.grid();
    const std::size_t n1 = grid.axes()[0].count;
    const std::size_t n2 = grid.axes()[1].count;
    auto bit = [&](std::size_t a, std::size_t b) { return ctx.map.cobs.at(a, b); };
    // A boundary cell has a 4-neighbour with the other label.
    auto isBoundary = [&](std::size_t a, std::size_t b) {
        const bool v = bit(a, b);
        return (a > 0 && bit(a - 1, b) != v) || (a + 1 < n1 && bit(a + 1, b) != v) || (b > 0 && bit(a, b - 1) != v) ||
               (b + 1 < n2 && bit(a, b + 1) != v);
    };
    std::size_t disagreements = 0;
    std::size_t farFromBoundary = 0;
    std::vector<double> q(2);
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b)
        {
            q[0] = grid.axes()[0].value(a);
            q[1] = grid.axes()[1].value(b);
            if (cspace::chiFast(q, ctx.map.regions) == bit(a, b))
                continue;
            ++disagreements;
            bool near = false;
            for (std::size_t da = a == 0 ? 0 : a - 1; da <= std::min(a + 1, n1 - 1) && !near; ++da)
                for (std::size_t db = b == 0 ? 0 : b - 1; db <= std::min(b + 1, n2 - 1) && !near; ++db)
                    near = isBoundary(da, db);
            farFromBoundary += near ? 0 : 1;
        }
    const double t = seconds(start);
    const double agreement = 1.0 - static_cast<double>(disagreements) / static_cast<double>(grid.size());
    const bool ok = agreement >= 0.99 && farFromBoundary == 0 && t < 10.0;
    return {4, "Reconstruction fidelity", ok,
            fmt::format("agreement={:.5f} over {} nodes, disagreements={}, beyond one cell of a boundary={}, "
                        "polygons={}",
                        agreement, grid.size(), disagreements, farFromBoundary, ctx.map.regions.size()),
            t};
}

Scene randomConvexScene(std::mt19937_64& rng, const Scene& base)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_int_distribution<int> corners(3, 8);
    Scene s = base;
    s.obstacles.clear();
    const int n = count(rng);
    for (int id = 1; s.obstacles.size() < static_cast<std::size_t>(n);)
    {
        const double dist = 0.05 + 0.25 * unit(rng);
        const double dir = 2.0 * std::numbers::pi * unit(rng);
        const Vec2 centre{dist * std::cos(dir), dist * std::sin(dir)};
        const double rx = 0.02 + 0.08 * unit(rng);
        const double ry = 0.02 + 0.08 * unit(rng);
        const double tilt = std::numbers::pi * unit(rng);
        std::vector<Vec2> pts;
        const int m = corners(rng);
        for (int k = 0; k < m; ++k)
        {
            const double th = 2.0 * std::numbers::pi * unit(rng);
            const Vec2 e{rx * std::cos(th), ry * std::sin(th)};
            pts.push_back(centre + Vec2{e.x * std::cos(tilt) - e.y * std::sin(tilt),
                                        e.x * std::sin(tilt) + e.y * std::cos(tilt)});
        }
        auto hull = geometry::convexHull(pts);
        if (hull.size() < 3)
            continue;
        try
        {
            force::ElasticObstacle o{id, geometry::ConvexPolygon(hull), 11.16, 0.105, 0.95,
                                     static_cast<std::size_t>(unit(rng) * static_cast<double>(hull.size()))};
            (void)force::buildFodr(o);
            s.obstacles.push_back(std::move(o));
            ++id;
        }
        catch (const Error&)
        {
            // too thin for its FODR or not strictly convex; draw again
        }
    }
    return s;
}

CriterionResult minkowskiOracle(Context& ctx)
{
    const auto start = Clock::now();
    std::mt19937_64 rng(ctx.options.seed + 5);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    std::size_t compared = 0;
    std::size_t banded = 0;
    std::size_t mismatches = 0;
    std::size_t hits = 0;
    double worstMismatch = 0.0;
    std::vector<double> q(2);
    std::vector<Vec2> body;
    for (std::size_t sIdx = 0; sIdx < ctx.options.oracleScenes; ++sIdx)
    {
        const Scene scene = randomConvexScene(rng, ctx.scene);
        const PreparedScene prepared = prepareScene(scene);
        std::vector<std::vector<Vec2>> rings;
        for (const auto& f : prepared.fodrs)
            rings.push_back(f.shape.vertices());
        for (std::size_t c = 0; c < ctx.options.oracleConfigurations; ++c)
        {
            q[0] = u(rng);
            q[1] = u(rng);
            kinematics::backboneInto(q, prepared.robot, body);
            if (oracleBandDistance(body, scene.thickness, rings) <= 1e-6)
            {
                ++banded;
                continue;
            }
            const bool exact = cspace::chiExact(q, prepared.robot, prepared.grown);
            const bool oracle = oracleBodyHits(body, scene.thickness, rings);
            ++compared;
            hits += exact ? 1 : 0;
            mismatches += exact != oracle ? 1 : 0;
            if (exact != oracle)
            {
                // How far the body overlaps (or misses) the FODR at the disagreeing configuration.
                double dmin = std::numeric_limits<double>::infinity();
                for (const auto& c : body)
                    for (const auto& ring : rings)
                        dmin = std::min(dmin, oracleDistance(c, ring));
                worstMismatch = std::max(worstMismatch, std::abs(dmin - scene.thickness));
            }
        }
    }
    const double t = seconds(start);
    const bool ok = mismatches == 0 && compared > 0 && t < 60.0;
    const double sagitta = ctx.scene.thickness * (1.0 - std::cos(std::numbers::pi / 64.0));
    return {5, "Minkowski oracle equivalence", ok,
            fmt::format("{} scenes x {} configurations: compared={}, in 1e-6 m band={}, unsafe={}, mismatches={}, "
                        "largest mismatch depth={:.2e} m (64-point disk sampling resolves {:.2e} m)",
                        ctx.options.oracleScenes, ctx.options.oracleConfigurations, compared, banded, hits, mismatches,
                        worstMismatch, sagitta),
            t};
}

CriterionResult kinematicsConvergence(Context&)
{
    constexpr double L = 0.122;
    kinematics::RobotModel robot{{{L}, {L}}, 0.02, 150};
    double worst = 0.0;
    for (const double q1 : {-std::numbers::pi, -1.3, -1e-7, 0.0, 0.4, std::numbers::pi / 2.0, std::numbers::pi})
        for (const double q2 : {-2.0, 0.0, 1.0, std::numbers::pi})
        {
            const std::vector<double> q{q1, q2};
            const auto body = kinematics::backbone(q, robot);
            for (std::size_t seg = 0; seg < 2; ++seg)
            {
                double chord = 0.0;
                for (std::size_t j = 1; j < 150; ++j)
                {
                    const Vec2 a = body[seg * 150 + j - 1];
                    const Vec2 b = body[seg * 150 + j];
                    chord += std::hypot(b.x - a.x, b.y - a.y);
                }
                worst = std::max(worst, std::abs(chord - L) / L);
            }
        }
    // One segment bent by pi is a half circle of radius L/pi: the tip sits at (2L/pi, 0).
    const kinematics::RobotModel single{{{L}}, 0.02, 150};
    const std::vector<double> half{std::numbers::pi};
    const Vec2 tip = kinematics::backbone(half, single).back();
    const double tipErr = std::hypot(tip.x - 2.0 * L / std::numbers::pi, tip.y);
    const bool ok = worst <= 1e-3 && tipErr <= 1e-9;
    return {6, "Kinematics convergence", ok,
            fmt::format("max relative chord-sum error={:.3e} (limit 1e-3), half-circle tip error={:.3e} m", worst,
                        tipErr)};
}

CriterionResult simulationRegression(Context& ctx)
{
    const auto start = Clock::now();
    const sim::TrajectorySpec spec;
    const auto records = sim::runSimulation(ctx.scene, &ctx.map, spec);
    const auto summary = sim::summarize(ctx.scene, records);
    std::ostringstream first;
    sim::writeCsv(first, ctx.scene, records);
    std::ostringstream second;
    sim::writeCsv(second, ctx.scene, sim::runSimulation(ctx.scene, &ctx.map, spec));
    const double t = seconds(start);

    std::string perObstacle;
    for (const auto& c : summary.obstacles)
        perObstacle += fmt::format(" obs{}:enter={},exit={}", c.obstacleId, c.enterCount, c.exitCount);
    const bool deterministic = first.str() == second.str();
    const bool ok = summary.fastEnterCount >= 2 && summary.fastExitCount >= 2 && summary.soundnessViolations == 0 &&
                    deterministic && t < 5.0;
    return {7, "Simulation regression", ok,
            fmt::format("steps={}, chi_fast safe->unsafe={}, unsafe->safe={},{} soundness violations={}, "
                        "csv deterministic={}, fast/exact disagreement={:.2f}%, max force={:.4f} N",
                        summary.steps, summary.fastEnterCount, summary.fastExitCount, perObstacle,
                        summary.soundnessViolations, deterministic ? "yes" : "no",
                        100.0 * static_cast<double>(summary.fastExactDisagreements) /
                            static_cast<double>(std::max<std::size_t>(summary.steps, 1)),
                        summary.maxForce),
            t};
}

} // namespace

std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& options)
{
    Context ctx{options, parseScene(exampleSceneJson()), {}, {}};
    ctx.prepared = prepareScene(ctx.scene);
    const auto buildStart = Clock::now();
    ctx.map = buildForceMap(ctx.scene, {.threads = options.threads});
    ctx.buildSeconds = seconds(buildStart);

    std::vector<CriterionResult> results;
    const std::vector<std::function<CriterionResult(Context&)>> criteria{
        fodrInset, soundnessSweep, queryLatency, reconstructionFidelity, minkowskiOracle, kinematicsConvergence,
        simulationRegression};
    for (const auto& run : criteria)
    {
        const auto start = Clock::now();
        try
        {
            results.push_back(run(ctx));
        }
        catch (const std::exception& e)
        {
            results.push_back({static_cast<int>(results.size()) + 1, "exception", false, e.what()});
        }
        if (results.back().seconds == 0.0)
            results.back().seconds = seconds(start);
    }
    const bool replaced = results[1].passed && results[4].passed && results[6].passed;
    results.push_back({8, "Hardware traces replaced", replaced,
                       "force traces and camera-calibrated placement are not reproducible at desk scale; "
                       "covered by criteria 2, 5 and 7"});
    return results;
}

std::string formatResult(const CriterionResult& r)
{
    return fmt::format("{} {} {}: {} ({:.2f} s)", r.passed ? "PASS" : "FAIL", r.id, r.name, r.detail, r.seconds);
}

int printAcceptance(std::ostream& out, const AcceptanceOptions& options)
{
    const auto results = runAcceptance(options);
    int failures = 0;
    for (const auto& r : results)
    {
        out << formatResult(r) << '\n';
        failures += r.passed ? 0 : 1;
    }
    out << fmt::format("{} of {} criteria passed\n", results.size() - static_cast<std::size_t>(failures),
                       results.size());
    return failures;
}

} // namespace forcemap::selftest
