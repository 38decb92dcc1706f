#include "forcemap/simharness.hpp"

#include "forcemap/error.hpp"

#include <cmath>
#include <fmt/format.h>
#include <ostream>

namespace forcemap::sim {

void TrajectorySpec::validate(const kinematics::RobotModel& robot) const
{
    if (!(dt > 0.0))
        throw InvalidGeometry("trajectory dt must be positive");
    if (!(duration >= 0.0) || !std::isfinite(duration))
        throw InvalidGeometry("trajectory duration must be finite and non-negative");
    if (duration > 0.0 && duration < dt)
        throw InvalidGeometry("trajectory duration must be at least dt");
    if (!(frequency >= 0.0))
        throw InvalidGeometry("trajectory frequency must be non-negative");
    if (amplitude.size() != robot.dof() || phase.size() != robot.dof())
        throw InvalidGeometry("trajectory needs one amplitude and one phase per joint");
    for (std::size_t j = 0; j < amplitude.size(); ++j)
    {
        const auto& seg = robot.segments[j];
        if (amplitude[j] < 0.0 || -amplitude[j] < seg.qMin || amplitude[j] > seg.qMax)
            throw InvalidGeometry(fmt::format("amplitude of joint {} exceeds its limits", j + 1));
    }
}

std::size_t TrajectorySpec::sampleCount() const noexcept
{
    if (duration <= 0.0)
        return 0;
    return static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
}

std::vector<TrajectorySample> sinusoidTrajectory(const TrajectorySpec& spec)
{
    std::vector<TrajectorySample> out(spec.sampleCount());
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        const double t = static_cast<double>(i) * spec.dt;
        out[i].t = t;
        out[i].q.resize(spec.amplitude.size());
        for (std::size_t j = 0; j < spec.amplitude.size(); ++j)
            out[i].q[j] = spec.amplitude[j] * std::sin(2.0 * std::numbers::pi * spec.frequency * t + spec.phase[j]);
    }
    return out;
}

std::vector<SimRecord> runSimulation(const Scene& scene, const ForceMap* map, const TrajectorySpec& spec)
{
    if (map == nullptr)
        throw MapMissing("simulation requires a built or loaded map");
    if (map->sceneHash != sceneHash(scene))
        throw StaleMap("map was built for a different scene");

    const PreparedScene prepared = prepareScene(scene);
    spec.validate(prepared.robot);

    std::vector<SimRecord> records;
    std::vector<geometry::Vec2> body;
    for (auto& sample : sinusoidTrajectory(spec))
    {
        SimRecord rec;
        rec.t = sample.t;
        rec.q = std::move(sample.q);
        rec.chiFast = cspace::chiFast(rec.q, map->regions);
        kinematics::backboneInto(rec.q, prepared.robot, body);
        for (std::size_t k = 0; k < scene.obstacles.size(); ++k)
        {
            bool hit = false;
            for (const auto& p : body)
                if (prepared.perObstacle[k].contains(p))
                {
                    hit = true;
                    break;
                }
            rec.chiExactPerObstacle.push_back(hit ? 1 : 0);
            rec.chiExact = rec.chiExact || hit;
            rec.forces.push_back(force::contactForce(body, scene.obstacles[k], scene.thickness));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

SimSummary summarize(const Scene& scene, const std::vector<SimRecord>& records)
{
    SimSummary s;
    s.steps = records.size();
    for (const auto& o : scene.obstacles)
        s.obstacles.push_back({.obstacleId = o.id});

    for (std::size_t i = 0; i < records.size(); ++i)
    {
        const auto& rec = records[i];
        bool overLimit = false;
        for (std::size_t k = 0; k < scene.obstacles.size(); ++k)
        {
            const auto& o = scene.obstacles[k];
            auto& c = s.obstacles[k];
            const double f = rec.forces[k].force;
            const bool chi = rec.chiExactPerObstacle[k] != 0;
            const bool over = !force::forceSafeByThreshold(rec.forces[k], o.forceLimit);
            overLimit = overLimit || over;
            c.maxForce = std::max(c.maxForce, f);
            if (chi)
            {
                if (over)
                    ++c.unsafeAndOverLimit;
                else if (f >= o.safetyFactor * o.forceLimit)
                    ++c.unsafeInMarginBand;
                else
                    ++c.unsafeBelowMargin;
            }
            else if (over)
                ++c.safeButOverLimit;
            else
                ++c.safeAndUnderLimit;

            if (i > 0)
            {
                const bool prev = records[i - 1].chiExactPerObstacle[k] != 0;
                c.enterCount += (!prev && chi) ? 1 : 0;
                c.exitCount += (prev && !chi) ? 1 : 0;
            }
            s.maxForce = std::max(s.maxForce, f);
        }
        if (!rec.chiExact && overLimit)
            ++s.soundnessViolations;
        if (rec.chiFast != rec.chiExact)
            ++s.fastExactDisagreements;
        if (rec.chiFast)
            ++s.unsafeSteps;
        if (i > 0)
        {
            const bool prev = records[i - 1].chiFast;
            s.fastEnterCount += (!prev && rec.chiFast) ? 1 : 0;
            s.fastExitCount += (prev && !rec.chiFast) ? 1 : 0;
        }
    }
    return s;
}

void writeCsv(std::ostream& out, const Scene& scene, const std::vector<SimRecord>& records)
{
    constexpr double kRadToDeg = 180.0 / std::numbers::pi;
    const std::size_t dof = scene.segmentLengths.size();
    std::string line = "t";
    for (std::size_t j = 0; j < dof; ++j)
        line += fmt::format(",q{}_deg", j + 1);
    line += ",chi_fast,chi_exact";
    for (const auto& o : scene.obstacles)
        line += fmt::format(",force_obs{}_N", o.id);
    out << line << '\n';

    for (const auto& rec : records)
    {
        line = fmt::format("{:.6f}", rec.t);
        for (const double q : rec.q)
            line += fmt::format(",{:.6f}", q * kRadToDeg);
        line += fmt::format(",{},{}", rec.chiFast ? 1 : 0, rec.chiExact ? 1 : 0);
        for (const auto& f : rec.forces)
            line += fmt::format(",{:.9f}", f.force);
        out << line << '\n';
    }
}

} // namespace forcemap::sim
