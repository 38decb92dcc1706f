#include "forcemap/alpha_shape.hpp"
#include "forcemap/delaunay.hpp"
#include "forcemap/error.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace forcemap;
using namespace forcemap::cspace;
using geometry::Vec2;

namespace {

std::vector<Vec2> gridPoints(int nx, int ny, double step, Vec2 origin = {0, 0})
{
    std::vector<Vec2> pts;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            pts.push_back(origin + Vec2{i * step, j * step});
    return pts;
}

double triangleArea(const std::vector<Vec2>& pts, const geometry::Triangle& t)
{
    return 0.5 * geometry::cross(pts[t.v[1]] - pts[t.v[0]], pts[t.v[2]] - pts[t.v[0]]);
}

void expectDelaunay(const std::vector<Vec2>& pts, const std::vector<geometry::Triangle>& tris, double tol)
{
    for (const auto& t : tris)
    {
        const Vec2 a = pts[t.v[0]];
        const Vec2 b = pts[t.v[1]];
        const Vec2 c = pts[t.v[2]];
        ASSERT_GT(triangleArea(pts, t), 0.0);
        // Circumcentre by the textbook formula.
        const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        const double a2 = a.x * a.x + a.y * a.y;
        const double b2 = b.x * b.x + b.y * b.y;
        const double c2 = c.x * c.x + c.y * c.y;
        const Vec2 o{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                     (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
        const double r = geometry::norm(a - o);
        EXPECT_NEAR(geometry::circumradius(a, b, c), r, 1e-9 * std::max(1.0, r));
        for (std::size_t k = 0; k < pts.size(); ++k)
            ASSERT_GE(geometry::norm(pts[k] - o), r - tol) << "point " << k << " inside a circumcircle";
    }
}

} // namespace

TEST(Delaunay, RandomPointsSatisfyEmptyCircle)
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const int n : {3, 10, 100, 400})
    {
        std::vector<Vec2> pts(n);
        for (auto& p : pts)
            p = {u(rng), u(rng)};
        const auto tris = geometry::delaunayTriangulation(pts);
        expectDelaunay(pts, tris, 1e-9);
        // Euler: a triangulation of n points with h hull vertices has 2n - 2 - h triangles.
        const auto hull = geometry::convexHull(pts);
        EXPECT_EQ(tris.size(), static_cast<std::size_t>(2 * n - 2) - hull.size());
        double area = 0.0;
        for (const auto& t : tris)
            area += triangleArea(pts, t);
        EXPECT_NEAR(area, 0.5 * geometry::signedArea2(hull), 1e-12);
    }
}

TEST(Delaunay, CocircularGridCoversHull)
{
    const auto pts = gridPoints(12, 9, 0.0174533, {-1.0, 0.5});
    const auto tris = geometry::delaunayTriangulation(pts);
    expectDelaunay(pts, tris, 1e-9);
    EXPECT_EQ(tris.size(), 2u * 11u * 8u);
    std::set<std::uint32_t> used;
    for (const auto& t : tris)
        used.insert(t.v.begin(), t.v.end());
    EXPECT_EQ(used.size(), pts.size());
}

TEST(Delaunay, DegenerateInputs)
{
    EXPECT_THROW(geometry::delaunayTriangulation(std::vector<Vec2>{{0, 0}, {1, 1}}), DegenerateInput);
    EXPECT_THROW(geometry::delaunayTriangulation(std::vector<Vec2>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}), DegenerateInput);
    EXPECT_TRUE(std::isinf(geometry::circumradius({0, 0}, {1, 0}, {2, 0})));
}

TEST(AlphaShape, LargeAlphaGivesConvexHull)
{
    const std::vector<Vec2> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto poly = alphaShape(corners, 100.0);
    ASSERT_TRUE(poly);
    EXPECT_EQ(poly->size(), 4u);
    EXPECT_NEAR(poly->area(), 1.0, 1e-12);
}

TEST(AlphaShape, TinyAlphaIsInvalid)
{
    const std::vector<Vec2> corners{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    EXPECT_FALSE(alphaShape(corners, 0.1));
}

TEST(AlphaShape, LShapeIsNonConvex)
{
    const double dq = std::numbers::pi / 180.0;
    std::vector<Vec2> pts;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            if (i < 8 || j < 8)
                pts.push_back({i * dq, j * dq});
    const auto poly = alphaShape(pts, 1.5 * dq);
    ASSERT_TRUE(poly);
    const double hullArea = 0.5 * geometry::signedArea2(geometry::convexHull(pts));
    EXPECT_LT(poly->area(), hullArea - 10.0 * dq * dq);
    // 19x19 cells minus the 12x12 block, plus half of the re-entrant corner cell.
    EXPECT_NEAR(poly->area(), (19.0 * 19.0 - 12.0 * 12.0 + 0.5) * dq * dq, 1e-12);
    EXPECT_FALSE(geometry::pointInPolygon({15 * dq, 15 * dq}, *poly));
    EXPECT_EQ(containmentFraction(pts, *poly), 1.0);
}

TEST(AlphaShape, TwoPointsAreDegenerate)
{
    EXPECT_THROW(alphaShape(std::vector<Vec2>{{0, 0}, {1, 0}}, 1.0), DegenerateInput);
}

TEST(AlphaShape, HolesAreFilled)
{
    const double dq = 0.01;
    std::vector<Vec2> ring;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            if (i < 2 || i > 7 || j < 2 || j > 7)
                ring.push_back({i * dq, j * dq});
    const auto poly = alphaShape(ring, 1.5 * dq);
    ASSERT_TRUE(poly);
    EXPECT_NEAR(poly->area(), 81.0 * dq * dq, 1e-12);
    EXPECT_TRUE(geometry::pointInPolygon({4.5 * dq, 4.5 * dq}, *poly));
}

TEST(AlphaShape, PinchedComponentsAreInvalid)
{
    // A bowtie: both kept triangles have circumradius 1.25, the side triangles 2.5,
    // so the shape touches itself only at the origin.
    const std::vector<Vec2> pts{{-1, -2}, {1, -2}, {0, 0}, {-1, 2}, {1, 2}};
    EXPECT_FALSE(alphaShape(pts, 1.5));
    EXPECT_TRUE(alphaShape(pts, 3.0));
}

TEST(SelectAlpha, DenseBlobTakesFirstAlpha)
{
    const double dq = std::numbers::pi / 180.0;
    const auto pts = gridPoints(15, 10, dq);
    const auto sel = selectAlpha(pts, dq, 1.5);
    EXPECT_EQ(sel.outcome, AlphaOutcome::Selected);
    EXPECT_EQ(sel.iterations, 1);
    EXPECT_DOUBLE_EQ(sel.alpha, 1.5 * dq);
    EXPECT_EQ(sel.containment, 1.0);
}

TEST(SelectAlpha, BridgeNeedsLargerAlpha)
{
    const double dq = std::numbers::pi / 180.0;
    std::vector<Vec2> pts = gridPoints(6, 6, dq);
    for (const Vec2 p : gridPoints(6, 6, dq, {14 * dq, 0}))
        pts.push_back(p);
    for (int i = 6; i < 14; ++i)
        pts.push_back({i * dq, 3 * dq});
    const auto sel = selectAlpha(pts, dq, 1.5);
    EXPECT_EQ(sel.outcome, AlphaOutcome::Selected);
    EXPECT_GT(sel.alpha, 1.5 * dq);
    EXPECT_GE(sel.containment, 0.999);
}

TEST(SelectAlpha, CollinearBandFallsBack)
{
    const double dq = 0.01;
    std::vector<Vec2> pts;
    for (int i = 0; i < 10; ++i)
        pts.push_back({i * dq, 0.5});
    const auto sel = selectAlpha(pts, dq, 1.5);
    EXPECT_EQ(sel.outcome, AlphaOutcome::DegenerateFallback);
    EXPECT_EQ(sel.alpha, 0.0);
    EXPECT_EQ(sel.containment, 1.0);
    EXPECT_NEAR(sel.polygon.area(), (9 * dq + dq) * dq, 1e-12);
}

TEST(SelectAlpha, SinglePointFallsBack)
{
    const std::vector<Vec2> pts{{0.2, 0.3}};
    const auto sel = selectAlpha(pts, 0.01, 1.5);
    EXPECT_EQ(sel.outcome, AlphaOutcome::DegenerateFallback);
    EXPECT_TRUE(geometry::pointInPolygon({0.2, 0.3}, sel.polygon));
}

TEST(SelectAlpha, ExhaustedScheduleUsesHull)
{
    // A schedule that never reaches a connected shape.
    const auto pts = gridPoints(5, 5, 1.0);
    const auto sel = selectAlpha(pts, 1.0, 0.1, {1.0, 3, 0.999});
    EXPECT_EQ(sel.outcome, AlphaOutcome::ConvexHullFallback);
    EXPECT_TRUE(std::isinf(sel.alpha));
    EXPECT_NEAR(sel.polygon.area(), 16.0, 1e-12);
}

TEST(SelectAlpha, RandomBlobsContainAllPoints)
{
    std::mt19937_64 rng(32);
    const double dq = 1.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial)
    {
        // Random 4-connected blob grown from the origin.
        std::set<std::pair<int, int>> cells{{0, 0}};
        std::vector<std::pair<int, int>> order{{0, 0}};
        while (cells.size() < 200)
        {
            auto [x, y] = order[static_cast<std::size_t>(u(rng) * static_cast<double>(order.size()))];
            const int dir = static_cast<int>(u(rng) * 4);
            x += dir == 0 ? 1 : dir == 1 ? -1 : 0;
            y += dir == 2 ? 1 : dir == 3 ? -1 : 0;
            if (cells.insert({x, y}).second)
                order.push_back({x, y});
        }
        std::vector<Vec2> pts;
        for (const auto& [x, y] : cells)
            pts.push_back({x * dq, y * dq});
        const auto sel = selectAlpha(pts, dq, 1.5);
        EXPECT_GE(sel.containment, 0.999);
        EXPECT_NE(sel.outcome, AlphaOutcome::DegenerateFallback);
        EXPECT_TRUE(geometry::isSimpleRing(sel.polygon.vertices()));
    }
}
