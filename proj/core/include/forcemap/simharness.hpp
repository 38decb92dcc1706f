#pragma once
/**
 * @file    simharness.hpp
 * @brief   Open-loop sinusoidal joint trajectories with per-step fast and
 *          exact safety classification and simulated contact forces.
 */

#include "forcemap/forcemodel.hpp"
#include "forcemap/pipeline.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <vector>

namespace forcemap::sim {

struct TrajectorySpec
{
    std::vector<double> amplitude{30.0 * std::numbers::pi / 180.0, 30.0 * std::numbers::pi / 180.0}; ///< rad
    double frequency{0.0071};                                                                       ///< Hz
    std::vector<double> phase{0.0, std::numbers::pi / 2.0};                                         ///< rad
    double duration{1.0 / 0.0071};                                                                  ///< s
    double dt{1.0 / 12.8};                                                                          ///< s

    /// Throws InvalidGeometry; duration 0 is allowed and yields no samples.
    void validate(const kinematics::RobotModel& robot) const;

    /// floor(duration / dt) + 1, or 0 when duration is 0.
    [[nodiscard]] std::size_t sampleCount() const noexcept;
};

struct TrajectorySample
{
    double t{0.0};
    std::vector<double> q;
};

/// q_j(t) = A_j sin(2 pi f t + phi_j) at t = 0, dt, 2 dt, ...
std::vector<TrajectorySample> sinusoidTrajectory(const TrajectorySpec& spec);

struct SimRecord
{
    double t{0.0};
    std::vector<double> q;
    bool chiFast{false};
    bool chiExact{false};
    std::vector<std::uint8_t> chiExactPerObstacle;  ///< backbone against each obstacle's own grown FODR
    std::vector<force::ContactForceReading> forces; ///< one per obstacle, scene order
};

/// Throws MapMissing when map is null, StaleMap when it was built for another scene.
std::vector<SimRecord> runSimulation(const Scene& scene, const ForceMap* map, const TrajectorySpec& spec);

/// Classification against the simulated force for one obstacle.
struct ObstacleConfusion
{
    int obstacleId{0};
    std::size_t unsafeAndOverLimit{0};  ///< chi = 1, F >= F_max
    std::size_t unsafeInMarginBand{0};  ///< chi = 1, delta F_max <= F < F_max
    std::size_t unsafeBelowMargin{0};   ///< chi = 1, F < delta F_max
    std::size_t safeAndUnderLimit{0};   ///< chi = 0, F < F_max
    std::size_t safeButOverLimit{0};    ///< chi = 0, F >= F_max: a soundness violation
    double maxForce{0.0};
    std::size_t enterCount{0};          ///< safe -> unsafe transitions of the per-obstacle exact indicator
    std::size_t exitCount{0};

    [[nodiscard]] std::size_t total() const noexcept
    {
        return unsafeAndOverLimit + unsafeInMarginBand + unsafeBelowMargin + safeAndUnderLimit + safeButOverLimit;
    }
};

struct SimSummary
{
    std::size_t steps{0};
    std::vector<ObstacleConfusion> obstacles;
    std::size_t soundnessViolations{0}; ///< steps with chi_exact = 0 and some force >= F_max
    std::size_t fastExactDisagreements{0};
    std::size_t unsafeSteps{0};         ///< chi_fast = 1
    std::size_t fastEnterCount{0};      ///< safe -> unsafe transitions of chi_fast
    std::size_t fastExitCount{0};
    double maxForce{0.0};

    [[nodiscard]] double unsafeFraction() const noexcept
    {
        return steps == 0 ? 0.0 : static_cast<double>(unsafeSteps) / static_cast<double>(steps);
    }
};

/**
 * Per-obstacle confusion uses the exact indicator of that obstacle's own
 * grown FODR, so each row compares one obstacle's geometry to its force.
 */
SimSummary summarize(const Scene& scene, const std::vector<SimRecord>& records);

/// Header t,q1_deg,...,chi_fast,chi_exact,force_obs<id>_N,... then one row per record.
void writeCsv(std::ostream& out, const Scene& scene, const std::vector<SimRecord>& records);

} // namespace forcemap::sim
