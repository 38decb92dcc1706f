#include "forcemap/geometry.hpp"

#include "forcemap/error.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <numeric>

namespace forcemap::geometry {

namespace {

int orientationSign(Vec2 a, Vec2 b, Vec2 c) noexcept
{
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool onSegment(Vec2 p, Vec2 a, Vec2 b) noexcept
{
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segmentsIntersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) noexcept
{
    const int o1 = orientationSign(a, b, c);
    const int o2 = orientationSign(a, b, d);
    const int o3 = orientationSign(c, d, a);
    const int o4 = orientationSign(c, d, b);
    if (o1 != o2 && o3 != o4)
        return true;
    if (o1 == 0 && onSegment(c, a, b))
        return true;
    if (o2 == 0 && onSegment(d, a, b))
        return true;
    if (o3 == 0 && onSegment(a, c, d))
        return true;
    return o4 == 0 && onSegment(b, c, d);
}

bool crossingParity(Vec2 p, std::span<const Vec2> ring) noexcept
{
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
    {
        const Vec2 a = ring[j];
        const Vec2 b = ring[i];
        if ((a.y > p.y) != (b.y > p.y))
        {
            const double xCross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xCross)
                inside = !inside;
        }
    }
    return inside;
}

double minEdgeDistance(Vec2 p, std::span<const Vec2> ring) noexcept
{
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        best = std::min(best, distanceToSegment(p, ring[j], ring[i]));
    return best;
}

} // namespace

Box boundingBox(std::span<const Vec2> points)
{
    Box box{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
            {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
    for (const Vec2& p : points)
    {
        box.min.x = std::min(box.min.x, p.x);
        box.min.y = std::min(box.min.y, p.y);
        box.max.x = std::max(box.max.x, p.x);
        box.max.y = std::max(box.max.y, p.y);
    }
    return box;
}

double distanceToSegment(Vec2 p, Vec2 a, Vec2 b) noexcept
{
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0)
        return norm(p - a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + ab * t));
}

double signedArea2(std::span<const Vec2> ring) noexcept
{
    double sum = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        sum += cross(ring[j], ring[i]);
    return sum;
}

UnitHalfspace UnitHalfspace::fromRow(Vec2 row, double rhs)
{
    const double len = norm(row);
    if (!(len > 0.0) || !std::isfinite(len))
        throw InvalidGeometry("halfspace row must be finite and non-zero");
    return {row / len, rhs / len};
}

UnitHalfspace halfspaceOffset(const UnitHalfspace& hs, double depth)
{
    if (depth < 0.0)
        throw InvalidGeometry("halfspace offset depth must be non-negative");
    return {hs.normal, hs.offset - depth};
}

// ---------------------------------------------------------------------------
// ConvexPolygon

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices))
{
    const std::size_t n = vertices_.size();
    if (n < 3)
        throw InvalidGeometry("convex polygon needs at least three vertices");
    if (signedArea2(vertices_) < 0.0)
        std::reverse(vertices_.begin(), vertices_.end());

    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const Vec2 a = vertices_[i];
        const Vec2 b = vertices_[(i + 1) % n];
        const Vec2 c = vertices_[(i + 2) % n];
        const Vec2 e0 = b - a;
        const Vec2 e1 = c - b;
        if (!(cross(e0, e1) > 0.0))
            throw InvalidGeometry("polygon is not strictly convex");
        turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    // A star polygon turns left everywhere but winds more than once.
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
        throw InvalidGeometry("convex polygon winds more than once");
}

UnitHalfspace ConvexPolygon::facet(std::size_t i) const
{
    const Vec2 a = vertices_[i % vertices_.size()];
    const Vec2 b = vertices_[(i + 1) % vertices_.size()];
    const Vec2 e = b - a;
    const UnitHalfspace hs = UnitHalfspace::fromRow({e.y, -e.x}, 0.0);
    return {hs.normal, dot(hs.normal, a)};
}

std::vector<UnitHalfspace> ConvexPolygon::halfspaces() const
{
    std::vector<UnitHalfspace> out;
    out.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        out.push_back(facet(i));
    return out;
}

double ConvexPolygon::area() const noexcept { return 0.5 * signedArea2(vertices_); }

double ConvexPolygon::perimeter() const noexcept
{
    double sum = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        sum += norm(vertices_[(i + 1) % vertices_.size()] - vertices_[i]);
    return sum;
}

Vec2 ConvexPolygon::centroid() const noexcept
{
    Vec2 acc{};
    double a2 = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        const Vec2 p = vertices_[i];
        const Vec2 q = vertices_[(i + 1) % n];
        const double c = cross(p, q);
        acc = acc + (p + q) * c;
        a2 += c;
    }
    return acc / (3.0 * a2);
}

bool ConvexPolygon::contains(Vec2 p, double eps) const noexcept
{
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (!facet(i).contains(p, eps))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// SimplePolygon

bool isSimpleRing(std::span<const Vec2> ring)
{
    const std::size_t n = ring.size();
    if (n < 3)
        return false;
    for (std::size_t i = 0; i < n; ++i)
        if (ring[i] == ring[(i + 1) % n])
            return false;

    // Sweep over edges ordered by min x; only x-overlapping edges are tested.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto minX = [&](std::size_t e) { return std::min(ring[e].x, ring[(e + 1) % n].x); };
    auto maxX = [&](std::size_t e) { return std::max(ring[e].x, ring[(e + 1) % n].x); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return minX(a) < minX(b) || (minX(a) == minX(b) && a < b);
    });

    std::vector<std::size_t> active;
    for (const std::size_t e : order)
    {
        const double x0 = minX(e);
        std::erase_if(active, [&](std::size_t o) { return maxX(o) < x0; });
        const Vec2 a = ring[e];
        const Vec2 b = ring[(e + 1) % n];
        for (const std::size_t o : active)
        {
            const Vec2 c = ring[o];
            const Vec2 d = ring[(o + 1) % n];
            const bool next = (e + 1) % n == o;
            const bool prev = (o + 1) % n == e;
            if (next || prev)
            {
                // Adjacent edges may only share their common vertex.
                const Vec2 farOfO = next ? d : c;
                const Vec2 farOfE = next ? a : b;
                if (n == 3)
                    continue;
                if (orientationSign(a, b, farOfO) == 0 && onSegment(farOfO, a, b))
                    return false;
                if (orientationSign(c, d, farOfE) == 0 && onSegment(farOfE, c, d))
                    return false;
                continue;
            }
            if (segmentsIntersect(a, b, c, d))
                return false;
        }
        active.push_back(e);
    }
    return true;
}

SimplePolygon::SimplePolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices))
{
    const double a2 = signedArea2(vertices_);
    if (vertices_.size() < 3 || a2 == 0.0 || !std::isfinite(a2))
        throw InvalidGeometry("simple polygon needs at least three vertices and non-zero area");
    if (a2 < 0.0)
        std::reverse(vertices_.begin(), vertices_.end());
    if (!isSimpleRing(vertices_))
        throw InvalidGeometry("polygon boundary self-intersects");
    bounds_ = boundingBox(vertices_);
}

SimplePolygon::SimplePolygon(const ConvexPolygon& convex)
    : SimplePolygon(std::vector<Vec2>(convex.vertices()), Trusted{})
{
}

SimplePolygon::SimplePolygon(std::vector<Vec2> vertices, Trusted)
    : vertices_(std::move(vertices)), bounds_(boundingBox(vertices_))
{
}

double SimplePolygon::area() const noexcept { return 0.5 * signedArea2(vertices_); }

double signedDistance(Vec2 p, const SimplePolygon& poly) noexcept
{
    const double d = minEdgeDistance(p, poly.vertices());
    if (d == 0.0)
        return 0.0;
    return crossingParity(p, poly.vertices()) ? -d : d;
}

bool pointInPolygon(Vec2 p, const SimplePolygon& poly) noexcept
{
    if (!poly.bounds().contains(p, kEpsilon))
        return false;
    if (crossingParity(p, poly.vertices()))
        return true;
    return minEdgeDistance(p, poly.vertices()) <= kEpsilon;
}

// ---------------------------------------------------------------------------
// Halfspace intersection

ConvexPolygon polygonFromHalfspaces(std::span<const UnitHalfspace> halfspaces)
{
    const std::size_t m = halfspaces.size();
    if (m < 3)
        throw Unbounded("fewer than three halfspaces cannot bound a region");

    // Bounded iff the normals are not confined to a closed half-plane.
    std::vector<double> angles;
    angles.reserve(m);
    for (const UnitHalfspace& hs : halfspaces)
        angles.push_back(std::atan2(hs.normal.y, hs.normal.x));
    std::sort(angles.begin(), angles.end());
    double maxGap = angles.front() + 2.0 * std::numbers::pi - angles.back();
    for (std::size_t i = 1; i < m; ++i)
        maxGap = std::max(maxGap, angles[i] - angles[i - 1]);
    if (maxGap >= std::numbers::pi - 1e-12)
        throw Unbounded("halfspace intersection is unbounded");

    std::vector<Vec2> candidates;
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t j = i + 1; j < m; ++j)
        {
            const UnitHalfspace& a = halfspaces[i];
            const UnitHalfspace& b = halfspaces[j];
            const double det = cross(a.normal, b.normal);
            if (std::abs(det) < 1e-14)
                continue;
            const Vec2 p{(a.offset * b.normal.y - b.offset * a.normal.y) / det,
                         (a.normal.x * b.offset - b.normal.x * a.offset) / det};
            const bool feasible = std::all_of(halfspaces.begin(), halfspaces.end(),
                                              [&](const UnitHalfspace& hs) { return hs.contains(p, 1e-12); });
            if (feasible)
                candidates.push_back(p);
        }
    }

    std::vector<Vec2> hull = convexHull(std::move(candidates));
    if (hull.size() < 3 || signedArea2(hull) <= 1e-18)
        throw EmptyIntersection("halfspace intersection has no interior");
    return ConvexPolygon(std::move(hull));
}

std::vector<Vec2> convexHull(std::vector<Vec2> points)
{
    std::sort(points.begin(), points.end(),
              [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3)
        return points;

    std::vector<Vec2> hull(2 * points.size());
    std::size_t k = 0;
    for (const Vec2& p : points)
    {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0)
            --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = points.size() - 1; i-- > 0;)
    {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0)
            --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

// ---------------------------------------------------------------------------
// Dilation

DilatedRegion::DilatedRegion(std::vector<SimplePolygon> bases, double radius)
    : bases_(std::move(bases)), radius_(radius)
{
    if (!(radius_ >= 0.0))
        throw InvalidGeometry("dilation radius must be non-negative");
    bounds_.reserve(bases_.size());
    for (const SimplePolygon& b : bases_)
        bounds_.push_back(b.bounds());
}

double DilatedRegion::distance(Vec2 p) const noexcept
{
    double best = std::numeric_limits<double>::infinity();
    for (const SimplePolygon& b : bases_)
        best = std::min(best, signedDistance(p, b));
    return best;
}

bool DilatedRegion::contains(Vec2 p) const noexcept
{
    const double reach = radius_ + kEpsilon;
    for (std::size_t i = 0; i < bases_.size(); ++i)
    {
        if (!bounds_[i].contains(p, reach))
            continue;
        if (signedDistance(p, bases_[i]) <= reach)
            return true;
    }
    return false;
}

SimplePolygon approximateDilationOutline(const ConvexPolygon& base, double radius, double arcTolerance)
{
    if (!(arcTolerance > 0.0))
        throw InvalidGeometry("arc tolerance must be positive");
    if (radius <= 0.0)
        return SimplePolygon(base);

    // Largest arc step whose chord stays within arcTolerance of the arc.
    const double maxStep =
        arcTolerance >= radius ? std::numbers::pi / 2.0 : 2.0 * std::acos(1.0 - arcTolerance / radius);

    const auto& v = base.vertices();
    const std::size_t n = v.size();
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < n; ++i)
    {
        const UnitHalfspace in = base.facet((i + n - 1) % n);
        const UnitHalfspace outFacet = base.facet(i);
        const double a0 = std::atan2(in.normal.y, in.normal.x);
        double sweep = std::atan2(outFacet.normal.y, outFacet.normal.x) - a0;
        while (sweep < 0.0)
            sweep += 2.0 * std::numbers::pi;
        const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(sweep / maxStep)));
        for (std::size_t k = 0; k <= steps; ++k)
        {
            const double a = a0 + sweep * static_cast<double>(k) / static_cast<double>(steps);
            out.push_back(v[i] + Vec2{std::cos(a), std::sin(a)} * radius);
        }
    }
    return SimplePolygon(std::move(out));
}

std::vector<SimplePolygon> approximateDilationOutlines(const DilatedRegion& region, double arcTolerance)
{
    std::vector<SimplePolygon> out;
    out.reserve(region.bases().size());
    for (const SimplePolygon& b : region.bases())
        out.push_back(approximateDilationOutline(ConvexPolygon(b.vertices()), region.radius(), arcTolerance));
    return out;
}

} // namespace forcemap::geometry
