#include "forcemap/polygon_index.hpp"

#include <algorithm>
#include <cmath>

namespace forcemap::geometry {

PolygonIndex::PolygonIndex(const SimplePolygon& polygon) : ring_(polygon.vertices()), bounds_(polygon.bounds())
{
    const std::size_t n = ring_.size();
    bandCount_ = std::clamp<std::size_t>(n / 2, 1, 4096);
    bandHeight_ = bounds_.height() > 0.0 ? bounds_.height() / static_cast<double>(bandCount_) : 1.0;

    std::vector<std::uint32_t> counts(bandCount_ + 1, 0);
    auto forEachBand = [&](std::size_t e, auto&& fn) {
        const Vec2 a = ring_[e];
        const Vec2 b = ring_[(e + 1) % n];
        const std::size_t lo = bandOf(std::min(a.y, b.y));
        const std::size_t hi = bandOf(std::max(a.y, b.y));
        for (std::size_t k = lo; k <= hi; ++k)
            fn(k);
    };
    for (std::size_t e = 0; e < n; ++e)
        forEachBand(e, [&](std::size_t k) { ++counts[k + 1]; });
    for (std::size_t k = 0; k < bandCount_; ++k)
        counts[k + 1] += counts[k];
    bandStart_ = counts;
    bandEdges_.resize(bandStart_.back());
    for (std::size_t e = 0; e < n; ++e)
        forEachBand(e, [&](std::size_t k) { bandEdges_[counts[k]++] = static_cast<std::uint32_t>(e); });
}

std::size_t PolygonIndex::bandOf(double y) const noexcept
{
    const double f = std::floor((y - bounds_.min.y) / bandHeight_);
    if (!(f > 0.0))
        return 0;
    return std::min(static_cast<std::size_t>(f), bandCount_ - 1);
}

bool PolygonIndex::contains(Vec2 p) const noexcept
{
    if (!bounds_.contains(p, kEpsilon))
        return false;
    const std::size_t n = ring_.size();

    bool inside = false;
    const std::size_t band = bandOf(p.y);
    for (std::uint32_t i = bandStart_[band]; i < bandStart_[band + 1]; ++i)
    {
        const std::uint32_t e = bandEdges_[i];
        const Vec2 a = ring_[e];
        const Vec2 b = ring_[(e + 1) % n];
        if ((a.y > p.y) != (b.y > p.y))
        {
            const double xCross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xCross)
                inside = !inside;
        }
    }
    if (inside)
        return true;

    const std::size_t lo = bandOf(p.y - kEpsilon);
    const std::size_t hi = bandOf(p.y + kEpsilon);
    for (std::size_t k = lo; k <= hi; ++k)
        for (std::uint32_t i = bandStart_[k]; i < bandStart_[k + 1]; ++i)
        {
            const std::uint32_t e = bandEdges_[i];
            if (distanceToSegment(p, ring_[e], ring_[(e + 1) % n]) <= kEpsilon)
                return true;
        }
    return false;
}

} // namespace forcemap::geometry
