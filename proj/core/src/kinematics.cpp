#include "forcemap/kinematics.hpp"

#include "forcemap/error.hpp"

#include <cmath>

namespace forcemap::kinematics {

void RobotModel::validate() const
{
    if (segments.empty())
        throw InvalidGeometry("robot needs at least one segment");
    for (const SegmentSpec& seg : segments)
    {
        if (!(seg.arcLength > 0.0))
            throw InvalidGeometry("segment arc length must be positive");
        if (!(seg.qMin < seg.qMax))
            throw InvalidGeometry("segment joint limits must satisfy q_min < q_max");
    }
    if (!(thickness > 0.0))
        throw InvalidGeometry("robot thickness must be positive");
    if (backboneSamples < 2)
        throw InvalidGeometry("backbone needs at least two samples per segment");
}

double RobotModel::totalLength() const noexcept
{
    double sum = 0.0;
    for (const SegmentSpec& seg : segments)
        sum += seg.arcLength;
    return sum;
}

bool RobotModel::withinLimits(std::span<const double> q, double eps) const noexcept
{
    if (q.size() != segments.size())
        return false;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (!(q[i] >= segments[i].qMin - eps && q[i] <= segments[i].qMax + eps))
            return false;
    return true;
}

Rigid2::Rigid2(double angle, Vec2 translation) : c_(std::cos(angle)), s_(std::sin(angle)), t_(translation) {}

double Rigid2::angle() const noexcept { return std::atan2(s_, c_); }

Rigid2 Rigid2::compose(const Rigid2& child) const noexcept
{
    Rigid2 out;
    out.c_ = c_ * child.c_ - s_ * child.s_;
    out.s_ = s_ * child.c_ + c_ * child.s_;
    out.t_ = apply(child.t_);
    return out;
}

Vec2 segmentPoint(double q, double arcLength, double s) noexcept
{
    const double kappa = q / arcLength;
    if (std::abs(q) < kStraightThreshold)
        return {kappa * s * s / 2.0, s - kappa * kappa * s * s * s / 6.0};
    const double radius = 1.0 / kappa;
    const double phi = kappa * s;
    const double half = std::sin(phi / 2.0);
    return {2.0 * radius * half * half, radius * std::sin(phi)};
}

Rigid2 segmentTransform(double q, double arcLength) noexcept
{
    return Rigid2(-q, segmentPoint(q, arcLength, arcLength));
}

void backboneInto(std::span<const double> q, const RobotModel& robot, std::vector<Vec2>& out)
{
    const std::size_t ns = robot.backboneSamples;
    out.resize(robot.backbonePointCount());
    Rigid2 frame;
    for (std::size_t i = 0; i < robot.segments.size(); ++i)
    {
        const double len = robot.segments[i].arcLength;
        for (std::size_t j = 0; j < ns; ++j)
        {
            const double s = len * static_cast<double>(j) / static_cast<double>(ns - 1);
            out[i * ns + j] = frame.apply(segmentPoint(q[i], len, s));
        }
        frame = frame.compose(segmentTransform(q[i], len));
    }
}

std::vector<Vec2> backbone(std::span<const double> q, const RobotModel& robot)
{
    if (q.size() != robot.segments.size())
        throw InvalidGeometry("configuration size does not match segment count");
    std::vector<Vec2> out;
    backboneInto(q, robot, out);
    return out;
}

Rigid2 tipPose(std::span<const double> q, const RobotModel& robot)
{
    Rigid2 frame;
    for (std::size_t i = 0; i < robot.segments.size(); ++i)
        frame = frame.compose(segmentTransform(q[i], robot.segments[i].arcLength));
    return frame;
}

} // namespace forcemap::kinematics
