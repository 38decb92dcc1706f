#include "forcemap/error.hpp"
#include "forcemap/forcemodel.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace forcemap;
using namespace forcemap::force;
using geometry::ConvexPolygon;
using geometry::Vec2;

namespace {

constexpr double kFmax = 0.105;
constexpr double kEnv = 11.16;
constexpr double kDelta = 0.95;
constexpr double kR = 0.02;

ConvexPolygon square(double side, Vec2 centre = {0, 0})
{
    const double h = side / 2.0;
    return ConvexPolygon({centre + Vec2{-h, -h}, centre + Vec2{h, -h}, centre + Vec2{h, h}, centre + Vec2{-h, h}});
}

/// Wall whose contact facet (index 3) is the plane x = 0, facing -x.
ElasticObstacle wall(double delta = kDelta)
{
    return {7, ConvexPolygon({{0.0, -0.2}, {0.05, -0.2}, {0.05, 0.2}, {0.0, 0.2}}), kEnv, kFmax, delta, 3};
}

} // namespace

TEST(MaxDeflection, PaperConstants) { EXPECT_NEAR(maxDeflection(kFmax, kDelta, kEnv), 0.009904, 1e-6); }

TEST(MaxDeflection, UnitCaseAndProportionality)
{
    EXPECT_DOUBLE_EQ(maxDeflection(1.0, 1.0, 1.0), 1.0);
    EXPECT_NEAR(maxDeflection(kFmax, 0.4, kEnv), 2.0 * maxDeflection(kFmax, 0.8, kEnv), 1e-15);
    EXPECT_THROW(maxDeflection(0.0, 1.0, 1.0), InvalidGeometry);
    EXPECT_THROW(maxDeflection(1.0, 1.5, 1.0), InvalidGeometry);
    EXPECT_THROW(maxDeflection(1.0, 1.0, -1.0), InvalidGeometry);
}

TEST(BuildFodr, SquareInsetKeepsCentre)
{
    // F_max chosen so that n_max = 0.0099 m exactly with delta = 1.
    const ElasticObstacle obs{1, square(0.10, {0.3, 0.1}), kEnv, 0.0099 * kEnv, 1.0, 0};
    const Fodr fodr = buildFodr(obs);
    EXPECT_NEAR(fodr.maxDeflection, 0.0099, 1e-15);
    const auto box = geometry::boundingBox(fodr.shape.vertices());
    EXPECT_NEAR(box.width(), 0.0802, 1e-12);
    EXPECT_NEAR(box.height(), 0.0802, 1e-12);
    EXPECT_NEAR(fodr.shape.centroid().x, 0.3, 1e-12);
    EXPECT_NEAR(fodr.shape.centroid().y, 0.1, 1e-12);
}

TEST(BuildFodr, ZeroInsetIsIdentity)
{
    const auto shape = square(0.1);
    const auto same = insetPolygon(shape, 0.0);
    EXPECT_NEAR(same.area(), shape.area(), 1e-15);
    for (const Vec2 v : shape.vertices())
        EXPECT_TRUE(same.contains(v, 1e-15));
}

TEST(BuildFodr, ThinSlabIsConsumed)
{
    const ElasticObstacle slab{42, ConvexPolygon({{0, 0}, {0.3, 0}, {0.3, 0.015}, {0, 0.015}}), kEnv, 0.0099 * kEnv, 1.0, 0};
    try
    {
        (void)buildFodr(slab);
        FAIL() << "expected ObstacleConsumed";
    }
    catch (const ObstacleConsumed& e)
    {
        EXPECT_EQ(e.obstacleId(), 42);
    }
}

TEST(BuildFodr, RandomObstaclesShrinkInside)
{
    std::mt19937_64 rng(21);
    int built = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const ConvexPolygon shape(oracle::randomConvexRing(rng, {0.1, 0.1}, 0.02, 0.12));
        const ElasticObstacle obs{i, shape, kEnv, kFmax, kDelta, 0};
        Fodr fodr{shape, 0, 0.0};
        try
        {
            fodr = buildFodr(obs);
        }
        catch (const ObstacleConsumed&)
        {
            continue;
        }
        ++built;
        EXPECT_LT(fodr.shape.area(), shape.area());
        // Every FODR vertex lies in the source, and every source facet sits n_max outside the FODR.
        for (const Vec2 v : fodr.shape.vertices())
            for (const auto& h : shape.halfspaces())
                ASSERT_LE(h.signedDistance(v), -fodr.maxDeflection + 1e-12);
        for (const auto& h : shape.halfspaces())
        {
            double closest = INFINITY;
            for (const Vec2 v : fodr.shape.vertices())
                closest = std::min(closest, -h.signedDistance(v));
            // A facet either survives at exactly n_max or is cut away entirely.
            ASSERT_GE(closest, fodr.maxDeflection - 1e-12);
        }
    }
    EXPECT_GT(built, 500);
}

TEST(ContactForce, ClampedAtDistance)
{
    const auto obs = wall(1.0);
    const std::vector<Vec2> far{{-0.05, 0.0}, {-0.03, 0.1}, {-kR, -0.1}};
    EXPECT_DOUBLE_EQ(contactForce(far, obs, kR).force, 0.0);
}

TEST(ContactForce, CentrelineOnFacet)
{
    const std::vector<Vec2> pts{{-0.05, 0.0}, {0.0, 0.05}};
    const auto reading = contactForce(pts, wall(1.0), kR);
    EXPECT_NEAR(reading.force, 0.2232, 1e-12);
    EXPECT_EQ(reading.deepestPointIndex, 1u);
    EXPECT_EQ(reading.obstacleId, 7);
}

TEST(ContactForce, ThresholdDistance)
{
    const double n = kR - kFmax / kEnv; // 0.02 - 0.009409
    EXPECT_NEAR(n, 0.02 - 0.009409, 1e-6);
    const std::vector<Vec2> pts{{-n, 0.0}};
    EXPECT_NEAR(contactForce(pts, wall(1.0), kR).force, kFmax, 1e-15);
}

TEST(ContactForce, DiscountedLawReachesLimitAtFodr)
{
    // With delta < 1 the force at the grown FODR boundary is exactly F_max.
    const double nmax = maxDeflection(kFmax, kDelta, kEnv);
    const std::vector<Vec2> pts{{-(kR - nmax), 0.0}};
    EXPECT_NEAR(contactForce(pts, wall(), kR).force, kFmax, 1e-15);
}

TEST(ContactForce, BeyondFacetExtentUsesSegmentDistance)
{
    const auto obs = wall(1.0);
    EXPECT_NEAR(contactDistance({-0.01, 0.21}, obs), std::hypot(0.01, 0.01), 1e-15);
    EXPECT_NEAR(contactDistance({-0.01, 0.0}, obs), 0.01, 1e-15);
    // Behind the plane the penetration keeps counting.
    EXPECT_NEAR(contactDistance({0.01, 0.25}, obs), -0.01, 1e-15);
}

TEST(ContactForce, NonIncreasingInDistance)
{
    const auto obs = wall();
    double previous = INFINITY;
    for (int i = 0; i <= 60; ++i)
    {
        const double n = -0.02 + 0.001 * i;
        const std::vector<Vec2> pts{{-n, 0.0}};
        const double f = contactForce(pts, obs, kR).force;
        EXPECT_NEAR(f, kDelta * kEnv * std::max(0.0, kR - n), 1e-15);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, previous);
        previous = f;
    }
}

TEST(ContactForce, SoundnessLinkOnRandomObstacles)
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-0.25, 0.25);
    std::uniform_int_distribution<int> pick(0, 100);
    int checked = 0;
    for (int i = 0; i < 200; ++i)
    {
        const ConvexPolygon shape(oracle::randomConvexRing(rng, {0, 0}, 0.04, 0.15));
        const ElasticObstacle obs{i, shape, kEnv, kFmax, kDelta, static_cast<std::size_t>(pick(rng)) % shape.size()};
        Fodr fodr{shape, 0, 0.0};
        try
        {
            fodr = buildFodr(obs);
        }
        catch (const ObstacleConsumed&)
        {
            continue;
        }
        const geometry::DilatedRegion grown({fodr.shape}, kR);
        const auto& v = shape.vertices();
        const Vec2 a = v[obs.contactFacet];
        const Vec2 b = v[(obs.contactFacet + 1) % v.size()];
        for (int k = 0; k < 500; ++k)
        {
            const Vec2 p{u(rng), u(rng)};
            const double t = geometry::dot(p - a, b - a) / geometry::dot(b - a, b - a);
            const bool facing = t >= 0.0 && t <= 1.0;
            if (!grown.contains(p) || !(facing || shape.facet(obs.contactFacet).signedDistance(p) < 0.0))
                continue;
            ++checked;
            const std::vector<Vec2> pts{p};
            ASSERT_GE(contactForce(pts, obs, kR).force, kFmax - 1e-12);
        }
    }
    EXPECT_GT(checked, 1000);
}

TEST(ForceThreshold, StrictLimit)
{
    EXPECT_TRUE(forceSafeByThreshold({1, 0.0, 0}, kFmax));
    EXPECT_FALSE(forceSafeByThreshold({1, kFmax, 0}, kFmax));
    EXPECT_TRUE(forceSafeByThreshold({1, 0.104, 0}, kFmax));
}

TEST(ElasticObstacle, Validation)
{
    EXPECT_THROW((ElasticObstacle{1, square(0.1), 0.0, kFmax, kDelta, 0}.validate()), InvalidGeometry);
    EXPECT_THROW((ElasticObstacle{1, square(0.1), kEnv, 0.0, kDelta, 0}.validate()), InvalidGeometry);
    EXPECT_THROW((ElasticObstacle{1, square(0.1), kEnv, kFmax, 0.0, 0}.validate()), InvalidGeometry);
    EXPECT_THROW((ElasticObstacle{1, square(0.1), kEnv, kFmax, kDelta, 4}.validate()), InvalidGeometry);
    EXPECT_NO_THROW((ElasticObstacle{1, square(0.1), kEnv, kFmax, 1.0, 3}.validate()));
}
