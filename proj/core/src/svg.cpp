#include "forcemap/svg.hpp"

#include <algorithm>
#include <numeric>
#include <fmt/format.h>
#include <numbers>

namespace forcemap::io {

namespace {

using geometry::Vec2;

constexpr double kPixelsPerMetre = 2000.0;
constexpr double kPixelsPerDegree = 2.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr const char* kSafeColour = "#2e9e44";
constexpr const char* kUnsafeColour = "#d62728";

/// Task-space frame: x right, y up, origin at the robot base.
struct TaskFrame
{
    geometry::Box box;

    [[nodiscard]] double width() const { return box.width() * kPixelsPerMetre; }
    [[nodiscard]] double height() const { return box.height() * kPixelsPerMetre; }
    [[nodiscard]] Vec2 map(Vec2 p) const
    {
        return {(p.x - box.min.x) * kPixelsPerMetre, (box.max.y - p.y) * kPixelsPerMetre};
    }
};

TaskFrame taskFrame(const Scene& scene)
{
    const double reach = std::accumulate(scene.segmentLengths.begin(), scene.segmentLengths.end(), 0.0) + scene.thickness;
    geometry::Box box{{-reach, -reach}, {reach, reach}};
    for (const auto& o : scene.obstacles)
        for (const auto& v : o.shape.vertices())
        {
            box.min = {std::min(box.min.x, v.x), std::min(box.min.y, v.y)};
            box.max = {std::max(box.max.x, v.x), std::max(box.max.y, v.y)};
        }
    const double pad = 0.02;
    box.min = box.min - Vec2{pad, pad};
    box.max = box.max + Vec2{pad, pad};
    return {box};
}

std::string points(const TaskFrame& frame, std::span<const Vec2> ring)
{
    std::string out;
    for (const auto& v : ring)
    {
        const Vec2 p = frame.map(v);
        if (!out.empty())
            out += ' ';
        out += fmt::format("{:.2f},{:.2f}", p.x, p.y);
    }
    return out;
}

std::string header(double width, double height)
{
    return fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
                       "viewBox=\"0 0 {0:.2f} {1:.2f}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
                       width, height);
}

std::string obstacleLayer(const Scene& scene, const TaskFrame& frame)
{
    const PreparedScene prepared = prepareScene(scene);
    std::string out = "<g id=\"obstacles\">\n";
    for (std::size_t k = 0; k < scene.obstacles.size(); ++k)
    {
        const auto& o = scene.obstacles[k];
        out += fmt::format("<polygon data-id=\"{}\" points=\"{}\" fill=\"#404040\" stroke=\"none\"/>\n", o.id,
                           points(frame, o.shape.vertices()));
        out += fmt::format("<polygon data-fodr=\"{}\" points=\"{}\" fill=\"#c8c8c8\" stroke=\"none\"/>\n", o.id,
                           points(frame, prepared.fodrs[k].shape.vertices()));
        const auto outline = geometry::approximateDilationOutline(prepared.fodrs[k].shape, scene.thickness, 1e-4);
        out += fmt::format("<polygon data-grown=\"{}\" points=\"{}\" fill=\"none\" stroke=\"#ff7f0e\" "
                           "stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n",
                           o.id, points(frame, outline.vertices()));
    }
    const Vec2 base = frame.map({0.0, 0.0});
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"black\"/>\n</g>\n", base.x, base.y);
    return out;
}

std::string backbonePath(const TaskFrame& frame, std::span<const double> q, const kinematics::RobotModel& robot,
                         const char* colour, double strokeWidth)
{
    const auto body = kinematics::backbone(q, robot);
    return fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{:.2f}\" "
                       "stroke-linecap=\"round\" stroke-linejoin=\"round\" stroke-opacity=\"0.6\"/>\n",
                       points(frame, body), colour, strokeWidth);
}

} // namespace

std::string renderTaskSpace(const Scene& scene, std::span<const std::vector<double>> poses)
{
    const TaskFrame frame = taskFrame(scene);
    const auto robot = scene.robot();
    std::string out = header(frame.width(), frame.height());
    out += obstacleLayer(scene, frame);
    const PreparedScene prepared = prepareScene(scene);
    for (const auto& q : poses)
    {
        const bool unsafe = cspace::chiExact(q, robot, prepared.grown);
        out += backbonePath(frame, q, robot, unsafe ? kUnsafeColour : kSafeColour,
                            2.0 * scene.thickness * kPixelsPerMetre);
    }
    out += "</svg>\n";
    return out;
}

std::string renderCSpace(const ForceMap& map, std::span<const sim::SimRecord> path)
{
    const auto& axes = map.cobs.grid().axes();
    std::string out;
    if (axes.size() != 2)
        return header(0, 0) + "</svg>\n";

    const double q1Min = axes[0].qMin * kRadToDeg;
    const double q2Max = axes[1].qMax() * kRadToDeg;
    const double q1Span = (axes[0].qMax() - axes[0].qMin) * kRadToDeg;
    const double q2Span = (axes[1].qMax() - axes[1].qMin) * kRadToDeg;
    const double cell1 = axes[0].step * kRadToDeg * kPixelsPerDegree;
    const double cell2 = axes[1].step * kRadToDeg * kPixelsPerDegree;
    const double width = q1Span * kPixelsPerDegree + cell1;
    const double height = q2Span * kPixelsPerDegree + cell2;
    auto toPixel = [&](Vec2 qRad) {
        return Vec2{(qRad.x * kRadToDeg - q1Min) * kPixelsPerDegree + cell1 / 2.0,
                    (q2Max - qRad.y * kRadToDeg) * kPixelsPerDegree + cell2 / 2.0};
    };

    out = header(width, height);
    // q1 runs left to right, q2 bottom to top; each row of the raster is one q2 value.
    out += "<g id=\"cobs\" fill=\"#9e9e9e\">\n";
    for (std::size_t k2 = axes[1].count; k2-- > 0;)
    {
        std::size_t k1 = 0;
        while (k1 < axes[0].count)
        {
            if (!map.cobs.at(k1, k2))
            {
                ++k1;
                continue;
            }
            const std::size_t start = k1;
            while (k1 < axes[0].count && map.cobs.at(k1, k2))
                ++k1;
            const Vec2 corner = toPixel({axes[0].value(start), axes[1].value(k2)});
            out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\"/>\n",
                               corner.x - cell1 / 2.0, corner.y - cell2 / 2.0, cell1 * static_cast<double>(k1 - start),
                               cell2);
        }
    }
    out += "</g>\n<g id=\"regions\" fill=\"#d62728\" fill-opacity=\"0.25\" stroke=\"#d62728\" stroke-width=\"1\">\n";
    for (const auto& region : map.regions.regions())
    {
        std::string pts;
        for (const auto& v : region.polygon.vertices())
        {
            const Vec2 p = toPixel(v);
            pts += fmt::format("{}{:.2f},{:.2f}", pts.empty() ? "" : " ", p.x, p.y);
        }
        out += fmt::format("<polygon data-alpha=\"{:.6g}\" points=\"{}\"/>\n", region.alpha, pts);
    }
    out += "</g>\n";
    if (!path.empty())
    {
        out += "<g id=\"path\" stroke-width=\"2\">\n";
        for (std::size_t i = 1; i < path.size(); ++i)
        {
            const Vec2 a = toPixel({path[i - 1].q[0], path[i - 1].q[1]});
            const Vec2 b = toPixel({path[i].q[0], path[i].q[1]});
            out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\"/>\n", a.x,
                               a.y, b.x, b.y, path[i].chiFast ? kUnsafeColour : kSafeColour);
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string renderSimulation(const Scene& scene, std::span<const sim::SimRecord> records)
{
    const TaskFrame frame = taskFrame(scene);
    const auto robot = scene.robot();
    std::string out = header(frame.width(), frame.height());
    out += obstacleLayer(scene, frame);
    out += "<g id=\"frames\">\n";
    for (std::size_t i = 0; i < records.size(); ++i)
    {
        const auto& rec = records[i];
        out += fmt::format("<g class=\"frame\" data-index=\"{}\" data-t=\"{:.6f}\" data-chi-fast=\"{}\">\n", i, rec.t,
                           rec.chiFast ? 1 : 0);
        out += backbonePath(frame, rec.q, robot, rec.chiFast ? kUnsafeColour : kSafeColour, 1.5);
        out += "</g>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace forcemap::io
