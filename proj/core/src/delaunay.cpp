#include "forcemap/delaunay.hpp"

#include "forcemap/error.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

namespace forcemap::geometry {

namespace {

using i64 = std::int64_t;
__extension__ using i128 = __int128;

constexpr i64 kLattice = (i64{1} << 24) - 1;
constexpr std::int32_t kNone = -1;

struct IPoint
{
    i64 x;
    i64 y;
};

int orient(const IPoint& a, const IPoint& b, const IPoint& c)
{
    const i128 v = static_cast<i128>(b.x - a.x) * (c.y - a.y) - static_cast<i128>(b.y - a.y) * (c.x - a.x);
    return (v > 0) - (v < 0);
}

/// Positive when d lies strictly inside the circle through counter-clockwise a, b, c.
int inCircle(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d)
{
    const i128 adx = a.x - d.x, ady = a.y - d.y;
    const i128 bdx = b.x - d.x, bdy = b.y - d.y;
    const i128 cdx = c.x - d.x, cdy = c.y - d.y;
    const i128 ad = adx * adx + ady * ady;
    const i128 bd = bdx * bdx + bdy * bdy;
    const i128 cd = cdx * cdx + cdy * cdy;
    const i128 v = ad * (bdx * cdy - cdx * bdy) - bd * (adx * cdy - cdx * ady) + cd * (adx * bdy - bdx * ady);
    return (v > 0) - (v < 0);
}

std::uint64_t hilbertIndex(std::uint32_t x, std::uint32_t y)
{
    constexpr std::uint32_t n = 1u << 16;
    std::uint64_t d = 0;
    for (std::uint32_t s = n / 2; s > 0; s /= 2)
    {
        const std::uint32_t rx = (x & s) ? 1u : 0u;
        const std::uint32_t ry = (y & s) ? 1u : 0u;
        d += static_cast<std::uint64_t>(s) * s * ((3u * rx) ^ ry);
        if (ry == 0)
        {
            if (rx == 1)
            {
                x = n - 1 - x;
                y = n - 1 - y;
            }
            std::swap(x, y);
        }
    }
    return d;
}

struct Tri
{
    std::array<std::uint32_t, 3> v;
    std::array<std::int32_t, 3> nb;
    bool alive;
};

class Triangulator
{
  public:
    /// Seeds the mesh with points a, b, c (counter-clockwise) and the three ghost triangles around it.
    Triangulator(std::vector<IPoint> pts, std::uint32_t a, std::uint32_t b, std::uint32_t c)
        : pts_(std::move(pts)), ghost_(static_cast<std::uint32_t>(pts_.size()))
    {
        // Ghost triangle (y, x, g) sits across hull edge x->y.
        tris_.push_back({{a, b, c}, {2, 3, 1}, true});
        tris_.push_back({{b, a, ghost_}, {3, 2, 0}, true});
        tris_.push_back({{c, b, ghost_}, {1, 3, 0}, true});
        tris_.push_back({{a, c, ghost_}, {2, 1, 0}, true});
        mark_.assign(4, 0);
    }

    void insert(std::uint32_t vi)
    {
        const IPoint& p = pts_[vi];
        std::int32_t t = locate(p);
        ++stamp_;

        cavity_.clear();
        stack_.clear();
        stack_.push_back(t);
        mark_[t] = stamp_;
        while (!stack_.empty())
        {
            const std::int32_t c = stack_.back();
            stack_.pop_back();
            cavity_.push_back(c);
            for (const std::int32_t nb : tris_[c].nb)
            {
                if (mark_[nb] == stamp_ || mark_[nb] == -stamp_)
                    continue;
                if (inCircumcircle(tris_[nb], p))
                {
                    mark_[nb] = stamp_;
                    stack_.push_back(nb);
                }
                else
                {
                    mark_[nb] = -stamp_;
                }
            }
        }

        fan_.clear();
        for (const std::int32_t c : cavity_)
        {
            for (int i = 0; i < 3; ++i)
            {
                const std::int32_t nb = tris_[c].nb[i];
                if (mark_[nb] == stamp_)
                    continue;
                fan_.push_back({tris_[c].v[(i + 1) % 3], tris_[c].v[(i + 2) % 3], nb, kNone});
            }
        }
        for (const std::int32_t c : cavity_)
        {
            tris_[c].alive = false;
            free_.push_back(c);
        }

        for (auto& f : fan_)
        {
            f.slot = allocate();
            tris_[f.slot] = {{f.a, f.b, vi}, {kNone, kNone, f.outside}, true};
            Tri& o = tris_[f.outside];
            for (int i = 0; i < 3; ++i)
                if (o.v[(i + 1) % 3] == f.b && o.v[(i + 2) % 3] == f.a)
                    o.nb[i] = f.slot;
        }
        // Fan triangles (a, b, p): edge b->p is shared with the triangle starting at b.
        for (auto& f : fan_)
        {
            for (const auto& g : fan_)
            {
                if (g.a == f.b)
                    tris_[f.slot].nb[0] = g.slot;
                if (g.b == f.a)
                    tris_[f.slot].nb[1] = g.slot;
            }
            if (f.a != ghost_ && f.b != ghost_)
                last_ = f.slot;
        }
    }

    std::vector<Triangle> finish(std::span<const std::uint32_t> originalIndex) const
    {
        std::vector<Triangle> out;
        for (const Tri& t : tris_)
        {
            if (!t.alive || isGhost(t))
                continue;
            out.push_back({{originalIndex[t.v[0]], originalIndex[t.v[1]], originalIndex[t.v[2]]}});
        }
        return out;
    }

  private:
    [[nodiscard]] bool isGhost(const Tri& t) const noexcept
    {
        return t.v[0] == ghost_ || t.v[1] == ghost_ || t.v[2] == ghost_;
    }

    /// Ghost circumcircles degenerate to the open halfplane beyond the hull edge plus the edge interior.
    [[nodiscard]] bool inCircumcircle(const Tri& t, const IPoint& p) const noexcept
    {
        for (int i = 0; i < 3; ++i)
        {
            if (t.v[i] != ghost_)
                continue;
            const IPoint& a = pts_[t.v[(i + 1) % 3]];
            const IPoint& b = pts_[t.v[(i + 2) % 3]];
            const int o = orient(a, b, p);
            if (o != 0)
                return o > 0;
            const i128 d = static_cast<i128>(p.x - a.x) * (b.x - a.x) + static_cast<i128>(p.y - a.y) * (b.y - a.y);
            const i128 len = static_cast<i128>(b.x - a.x) * (b.x - a.x) + static_cast<i128>(b.y - a.y) * (b.y - a.y);
            return d > 0 && d < len;
        }
        return inCircle(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], p) > 0;
    }

    std::int32_t allocate()
    {
        if (!free_.empty())
        {
            const std::int32_t s = free_.back();
            free_.pop_back();
            return s;
        }
        tris_.push_back({});
        mark_.push_back(0);
        return static_cast<std::int32_t>(tris_.size() - 1);
    }

    std::int32_t locate(const IPoint& p) const
    {
        std::int32_t t = last_;
        for (;;)
        {
            const Tri& tri = tris_[t];
            if (isGhost(tri))
                return t;
            bool moved = false;
            for (int i = 0; i < 3; ++i)
            {
                if (orient(pts_[tri.v[(i + 1) % 3]], pts_[tri.v[(i + 2) % 3]], p) < 0)
                {
                    t = tri.nb[i];
                    moved = true;
                    break;
                }
            }
            if (!moved)
                return t;
        }
    }

    std::vector<IPoint> pts_;
    std::vector<Tri> tris_;
    std::vector<std::int64_t> mark_;
    std::vector<std::int32_t> free_;
    std::vector<std::int32_t> cavity_;
    std::vector<std::int32_t> stack_;
    struct FanEdge
    {
        std::uint32_t a, b;
        std::int32_t outside;
        std::int32_t slot;
    };
    std::vector<FanEdge> fan_;
    std::uint32_t ghost_;
    std::int64_t stamp_{0};
    std::int32_t last_{0};
};

} // namespace

std::vector<Triangle> delaunayTriangulation(std::span<const Vec2> points)
{
    if (points.size() < 3)
        throw DegenerateInput("triangulation needs at least three points");

    const Box box = boundingBox(points);
    const double extent = std::max(box.width(), box.height());
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw DegenerateInput("points are coincident or non-finite");
    const double scale = static_cast<double>(kLattice) / extent;

    std::vector<IPoint> snapped(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        snapped[i] = {std::llround((points[i].x - box.min.x) * scale), std::llround((points[i].y - box.min.y) * scale)};

    std::vector<std::uint32_t> order(points.size());
    std::iota(order.begin(), order.end(), 0u);
    std::vector<std::uint64_t> key(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        key[i] = hilbertIndex(static_cast<std::uint32_t>(snapped[i].x >> 8), static_cast<std::uint32_t>(snapped[i].y >> 8));
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (key[a] != key[b])
            return key[a] < key[b];
        if (snapped[a].x != snapped[b].x)
            return snapped[a].x < snapped[b].x;
        return snapped[a].y < snapped[b].y;
    });

    std::vector<IPoint> unique;
    std::vector<std::uint32_t> originalIndex;
    unique.reserve(points.size());
    for (std::size_t k = 0; k < order.size(); ++k)
    {
        const IPoint& p = snapped[order[k]];
        if (k > 0)
        {
            const IPoint& q = snapped[order[k - 1]];
            if (p.x == q.x && p.y == q.y)
                continue;
        }
        unique.push_back(p);
        originalIndex.push_back(order[k]);
    }

    std::uint32_t third = 2;
    while (third < unique.size() && orient(unique[0], unique[1], unique[third]) == 0)
        ++third;
    if (third >= unique.size())
        throw DegenerateInput("points are collinear");
    const bool ccw = orient(unique[0], unique[1], unique[third]) > 0;

    Triangulator tri(unique, 0, ccw ? 1 : third, ccw ? third : 1);
    for (std::uint32_t i = 2; i < unique.size(); ++i)
        if (i != third)
            tri.insert(i);

    std::vector<Triangle> out = tri.finish(originalIndex);
    if (out.empty())
        throw DegenerateInput("points are collinear");
    return out;
}

double circumradius(Vec2 a, Vec2 b, Vec2 c) noexcept
{
    const double ab = norm(b - a);
    const double bc = norm(c - b);
    const double ca = norm(a - c);
    const double area2 = std::abs(cross(b - a, c - a));
    if (area2 == 0.0)
        return std::numeric_limits<double>::infinity();
    return ab * bc * ca / (2.0 * area2);
}

} // namespace forcemap::geometry
