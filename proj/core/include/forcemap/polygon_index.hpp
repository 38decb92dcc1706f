#pragma once

#include "forcemap/geometry.hpp"

#include <cstdint>
#include <vector>

namespace forcemap::geometry {

/**
 * Point-in-polygon accelerator: the polygon's y-extent is cut into bands,
 * each listing the edges that overlap it, so a query scans only the edges
 * near the query's y coordinate. Same boundary convention as pointInPolygon.
 */
class PolygonIndex
{
  public:
    explicit PolygonIndex(const SimplePolygon& polygon);

    [[nodiscard]] bool contains(Vec2 p) const noexcept;
    [[nodiscard]] const Box& bounds() const noexcept { return bounds_; }

  private:
    [[nodiscard]] std::size_t bandOf(double y) const noexcept;

    std::vector<Vec2> ring_;
    Box bounds_;
    double bandHeight_{1.0};
    std::size_t bandCount_{1};
    std::vector<std::uint32_t> bandStart_;
    std::vector<std::uint32_t> bandEdges_;
};

} // namespace forcemap::geometry
