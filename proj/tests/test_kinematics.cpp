#include "forcemap/error.hpp"
#include "forcemap/kinematics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace forcemap;
using namespace forcemap::kinematics;

namespace {

constexpr double kL = 0.122;
constexpr double kPi = std::numbers::pi;

RobotModel twoSegment(std::size_t samples = 150) { return RobotModel{{{kL}, {kL}}, 0.02, samples}; }

double chordSum(const std::vector<Vec2>& pts, std::size_t first, std::size_t count)
{
    double sum = 0.0;
    for (std::size_t j = first + 1; j < first + count; ++j)
        sum += geometry::norm(pts[j] - pts[j - 1]);
    return sum;
}

} // namespace

TEST(SegmentPoint, StraightLimit)
{
    const Vec2 p = segmentPoint(0.0, kL, 0.061);
    EXPECT_DOUBLE_EQ(p.x, 0.0);
    EXPECT_DOUBLE_EQ(p.y, 0.061);
}

TEST(SegmentPoint, HalfCircle)
{
    const Vec2 p = segmentPoint(kPi, kL, kL);
    EXPECT_NEAR(p.x, 2.0 * kL / kPi, 1e-12);
    EXPECT_NEAR(p.x, 0.07767, 1e-5);
    EXPECT_NEAR(p.y, 0.0, 1e-12);
}

TEST(SegmentPoint, QuarterCircle)
{
    // Bending by pi/2 gives R = L / (pi/2) = 2L/pi and a tip at (R, R).
    const Vec2 p = segmentPoint(kPi / 2.0, kL, kL);
    const double R = 2.0 * kL / kPi;
    EXPECT_NEAR(p.x, R, 1e-12);
    EXPECT_NEAR(p.y, R, 1e-12);
}

TEST(SegmentPoint, MirrorSymmetry)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uq(-kPi, kPi);
    std::uniform_real_distribution<double> us(0.0, kL);
    for (int i = 0; i < 1000; ++i)
    {
        const double q = uq(rng);
        const double s = us(rng);
        const Vec2 a = segmentPoint(q, kL, s);
        const Vec2 b = segmentPoint(-q, kL, s);
        EXPECT_NEAR(a.x, -b.x, 1e-15);
        EXPECT_NEAR(a.y, b.y, 1e-15);
    }
}

TEST(SegmentPoint, StaysOnArcOfCorrectLength)
{
    // Every point lies on the circle of radius L/q centred at (L/q, 0).
    for (const double q : {0.01, 0.3, 1.0, 2.5, kPi})
    {
        const double R = kL / q;
        for (int j = 0; j <= 10; ++j)
        {
            const Vec2 p = segmentPoint(q, kL, kL * j / 10.0);
            EXPECT_NEAR(std::hypot(p.x - R, p.y), R, 1e-12);
        }
    }
}

TEST(SegmentPoint, ContinuousAndSmoothAcrossStraightSwitch)
{
    // Value and derivative in q match on both sides of the Taylor switch.
    for (const double s : {0.03, 0.061, kL})
    {
        const double h = 1e-7;
        for (const double q0 : {-kStraightThreshold, kStraightThreshold})
        {
            const Vec2 below = segmentPoint(std::nextafter(q0, 0.0), kL, s);
            const Vec2 above = segmentPoint(std::nextafter(q0, 2.0 * q0), kL, s);
            EXPECT_NEAR(below.x, above.x, 1e-20);
            EXPECT_NEAR(below.y, above.y, 1e-15);
            // d x / d q = s^2 / (2L) near q = 0.
            const double slopeBelow = (segmentPoint(q0 * 0.5, kL, s).x - segmentPoint(q0 * 0.5 - h, kL, s).x) / h;
            const double slopeAbove = (segmentPoint(q0 * 2.0 + h, kL, s).x - segmentPoint(q0 * 2.0, kL, s).x) / h;
            EXPECT_NEAR(slopeBelow, s * s / (2.0 * kL), 1e-6);
            EXPECT_NEAR(slopeAbove, s * s / (2.0 * kL), 1e-6);
        }
    }
}

TEST(SegmentTransform, Examples)
{
    const Rigid2 straight = segmentTransform(0.0, kL);
    EXPECT_NEAR(straight.angle(), 0.0, 1e-15);
    EXPECT_NEAR(straight.translation().x, 0.0, 1e-15);
    EXPECT_NEAR(straight.translation().y, kL, 1e-15);

    const Rigid2 half = segmentTransform(kPi, kL);
    EXPECT_NEAR(std::abs(half.angle()), kPi, 1e-12);
    EXPECT_NEAR(half.translation().x, 2.0 * kL / kPi, 1e-12);
    EXPECT_NEAR(half.translation().y, 0.0, 1e-12);

    const Rigid2 chain = segmentTransform(0.0, kL).compose(segmentTransform(0.0, 0.2));
    EXPECT_NEAR(chain.translation().x, 0.0, 1e-15);
    EXPECT_NEAR(chain.translation().y, kL + 0.2, 1e-15);
}

TEST(SegmentTransform, TangentMatchesArcDerivative)
{
    // The tip frame's y axis is the arc tangent at s = L.
    for (const double q : {-2.0, -0.5, 0.7, 3.0})
    {
        const Rigid2 t = segmentTransform(q, kL);
        const double h = 1e-5;
        const Vec2 d = (segmentPoint(q, kL, kL + h) - segmentPoint(q, kL, kL - h)) / (2.0 * h);
        const Vec2 yAxis = t.rotate({0.0, 1.0});
        EXPECT_NEAR(d.x, yAxis.x, 1e-6);
        EXPECT_NEAR(d.y, yAxis.y, 1e-6);
    }
}

TEST(Backbone, StraightConfiguration)
{
    const auto robot = twoSegment();
    const auto pts = backbone(Configuration{{0.0, 0.0}}, robot);
    ASSERT_EQ(pts.size(), 300u);
    EXPECT_EQ(pts.front(), (Vec2{0.0, 0.0}));
    EXPECT_NEAR(pts.back().y, 0.244, 1e-15);
    for (const auto& p : pts)
    {
        EXPECT_DOUBLE_EQ(p.x, 0.0);
        EXPECT_GE(p.y, 0.0);
    }
}

TEST(Backbone, OppositeBendsCancelOrientation)
{
    const auto robot = twoSegment();
    const std::vector<double> q{kPi / 2.0, -kPi / 2.0};
    EXPECT_NEAR(tipPose(q, robot).angle(), 0.0, 1e-12);
}

TEST(Backbone, PointCountAndSpacing)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> uq(-kPi, kPi);
    for (const std::size_t ns : {2u, 7u, 150u})
    {
        const auto robot = twoSegment(ns);
        for (int i = 0; i < 50; ++i)
        {
            const std::vector<double> q{uq(rng), uq(rng)};
            const auto pts = backbone(q, robot);
            ASSERT_EQ(pts.size(), 2 * ns);
            EXPECT_EQ(pts.front(), (Vec2{0.0, 0.0}));
            for (std::size_t j = 1; j < pts.size(); ++j)
                EXPECT_LE(geometry::norm(pts[j] - pts[j - 1]), kL / static_cast<double>(ns - 1) + 1e-12);
            // The second segment starts at the first segment's tip.
            EXPECT_NEAR(geometry::norm(pts[ns] - pts[ns - 1]), 0.0, 1e-15);
            const Vec2 tip = tipPose(q, robot).translation();
            EXPECT_NEAR(tip.x, pts.back().x, 1e-15);
            EXPECT_NEAR(tip.y, pts.back().y, 1e-15);
        }
    }
}

TEST(Backbone, ChordSumWithinTenthOfAPercent)
{
    const auto robot = twoSegment();
    for (const double q1 : {-kPi, -1.0, 0.0, 0.5, kPi})
        for (const double q2 : {-kPi, 0.0, 2.0})
        {
            const auto pts = backbone(std::vector<double>{q1, q2}, robot);
            EXPECT_NEAR(chordSum(pts, 0, 150), kL, 1e-3 * kL);
            EXPECT_NEAR(chordSum(pts, 150, 150), kL, 1e-3 * kL);
        }
}

TEST(Backbone, ChordSumConvergesQuadratically)
{
    // Chord deficit on a circular arc is ~ L q^2 / (24 (N-1)^2).
    const double q = kPi;
    std::vector<double> errors;
    const std::vector<std::size_t> ns{10, 50, 150, 500};
    for (const std::size_t n : ns)
    {
        const RobotModel robot{{{kL}}, 0.02, n};
        errors.push_back(kL - chordSum(backbone(std::vector<double>{q}, robot), 0, n));
    }
    for (std::size_t i = 0; i < ns.size(); ++i)
    {
        const double predicted = kL * q * q / (24.0 * static_cast<double>((ns[i] - 1) * (ns[i] - 1)));
        EXPECT_NEAR(errors[i] / predicted, 1.0, 0.02);
    }
    for (std::size_t i = 1; i < ns.size(); ++i)
    {
        const double order = std::log(errors[i - 1] / errors[i]) /
                             std::log(static_cast<double>(ns[i] - 1) / static_cast<double>(ns[i - 1] - 1));
        EXPECT_NEAR(order, 2.0, 0.05);
    }
}

TEST(RobotModel, Validation)
{
    EXPECT_NO_THROW(twoSegment().validate());
    EXPECT_THROW((RobotModel{{}, 0.02, 150}.validate()), InvalidGeometry);
    EXPECT_THROW((RobotModel{{{0.0}}, 0.02, 150}.validate()), InvalidGeometry);
    EXPECT_THROW((RobotModel{{{kL}}, 0.0, 150}.validate()), InvalidGeometry);
    EXPECT_THROW((RobotModel{{{kL}}, 0.02, 1}.validate()), InvalidGeometry);
    EXPECT_THROW((RobotModel{{{kL, 1.0, -1.0}}, 0.02, 150}.validate()), InvalidGeometry);
}

TEST(RobotModel, JointLimits)
{
    const auto robot = twoSegment();
    EXPECT_TRUE(robot.withinLimits(std::vector<double>{kPi, -kPi}));
    EXPECT_FALSE(robot.withinLimits(std::vector<double>{kPi + 1e-6, 0.0}));
    EXPECT_FALSE(robot.withinLimits(std::vector<double>{0.0}));
}
