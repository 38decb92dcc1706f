#pragma once
/**
 * @file    kinematics.hpp
 * @brief   Planar piecewise-constant-curvature forward kinematics.
 *
 * Frame convention: each segment starts at the origin of its local frame
 * with its base tangent along +y. A positive bend angle curves the segment
 * towards +x, so the tip frame is rotated clockwise by the bend angle.
 */

#include "forcemap/geometry.hpp"

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace forcemap::kinematics {

using geometry::Vec2;

/// Below this bend angle a segment is evaluated with its Taylor expansion.
inline constexpr double kStraightThreshold = 1e-6;

struct SegmentSpec
{
    double arcLength{0.0}; ///< m
    double qMin{-std::numbers::pi};
    double qMax{std::numbers::pi};
};

struct RobotModel
{
    std::vector<SegmentSpec> segments;
    double thickness{0.0};          ///< body radius r, m
    std::size_t backboneSamples{2}; ///< N_s, per segment

    /// Throws InvalidGeometry if any invariant is violated.
    void validate() const;

    [[nodiscard]] std::size_t dof() const noexcept { return segments.size(); }
    [[nodiscard]] std::size_t backbonePointCount() const noexcept { return segments.size() * backboneSamples; }
    [[nodiscard]] double totalLength() const noexcept;
    [[nodiscard]] bool withinLimits(std::span<const double> q, double eps = 1e-12) const noexcept;
};

/// Joint angles in radians, one per segment.
struct Configuration
{
    std::vector<double> q;
};

/// Planar rigid transform p_parent = R * p_local + t.
class Rigid2
{
  public:
    Rigid2() = default;
    Rigid2(double angle, Vec2 translation);

    [[nodiscard]] double angle() const noexcept;
    [[nodiscard]] double cosine() const noexcept { return c_; }
    [[nodiscard]] double sine() const noexcept { return s_; }
    [[nodiscard]] Vec2 translation() const noexcept { return t_; }

    [[nodiscard]] Vec2 apply(Vec2 p) const noexcept { return {c_ * p.x - s_ * p.y + t_.x, s_ * p.x + c_ * p.y + t_.y}; }
    [[nodiscard]] Vec2 rotate(Vec2 p) const noexcept { return {c_ * p.x - s_ * p.y, s_ * p.x + c_ * p.y}; }

    /// this followed by child, i.e. (*this) * child.
    [[nodiscard]] Rigid2 compose(const Rigid2& child) const noexcept;

  private:
    double c_{1.0};
    double s_{0.0};
    Vec2 t_{};
};

/// Point at arc length s on a segment of length L bent by q, in the segment frame.
Vec2 segmentPoint(double q, double arcLength, double s) noexcept;

/// Tip pose of a segment relative to its base: rotation -q, translation segmentPoint(q, L, L).
Rigid2 segmentTransform(double q, double arcLength) noexcept;

/// n * N_s points; segment i samples s_j = j L_i / (N_s - 1) mapped through segments 1..i-1.
std::vector<Vec2> backbone(std::span<const double> q, const RobotModel& robot);
inline std::vector<Vec2> backbone(const Configuration& config, const RobotModel& robot)
{
    return backbone(config.q, robot);
}

/// Allocation-free variant; out is resized to robot.backbonePointCount().
void backboneInto(std::span<const double> q, const RobotModel& robot, std::vector<Vec2>& out);

/// Pose of the tip frame.
Rigid2 tipPose(std::span<const double> q, const RobotModel& robot);

} // namespace forcemap::kinematics
