#include "forcemap/cspace.hpp"

#include "forcemap/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <thread>

namespace forcemap::cspace {

JointGrid::JointGrid(std::vector<JointAxis> axes) : axes_(std::move(axes))
{
    for (const JointAxis& a : axes_)
        if (a.count < 1 || !(a.step > 0.0))
            throw InvalidGeometry("joint axis needs a positive step and at least one sample");
}

JointGrid JointGrid::uniform(const RobotModel& robot, double resolution)
{
    if (!(resolution > 0.0))
        throw InvalidGeometry("grid resolution must be positive");
    std::vector<JointAxis> axes;
    for (const auto& seg : robot.segments)
    {
        const double steps = (seg.qMax - seg.qMin) / resolution;
        const double whole = std::round(steps);
        if (std::abs(steps - whole) > 1e-6)
            throw InvalidGeometry(fmt::format("joint range {} rad is not a whole number of {} rad steps",
                                              seg.qMax - seg.qMin, resolution));
        axes.push_back({seg.qMin, resolution, static_cast<std::size_t>(whole) + 1});
    }
    return JointGrid(std::move(axes));
}

std::size_t JointGrid::size() const noexcept
{
    std::size_t n = axes_.empty() ? 0 : 1;
    for (const JointAxis& a : axes_)
        n *= a.count;
    return n;
}

std::size_t JointGrid::flatIndex(std::span<const std::size_t> k) const noexcept
{
    std::size_t flat = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i)
        flat = flat * axes_[i].count + k[i];
    return flat;
}

void JointGrid::unflatten(std::size_t flat, std::span<std::size_t> k) const noexcept
{
    for (std::size_t i = axes_.size(); i-- > 0;)
    {
        k[i] = flat % axes_[i].count;
        flat /= axes_[i].count;
    }
}

void JointGrid::configuration(std::size_t flat, std::span<double> q) const noexcept
{
    for (std::size_t i = axes_.size(); i-- > 0;)
    {
        q[i] = axes_[i].value(flat % axes_[i].count);
        flat /= axes_[i].count;
    }
}

CObsGrid::CObsGrid(JointGrid grid, std::vector<std::uint8_t> bits) : grid_(std::move(grid)), bits_(std::move(bits))
{
    if (bits_.size() != grid_.size())
        throw InvalidGeometry("occupancy size does not match grid size");
}

std::size_t CObsGrid::unsafeCount() const noexcept
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

double CObsGrid::unsafeFraction() const noexcept
{
    return bits_.empty() ? 0.0 : static_cast<double>(unsafeCount()) / static_cast<double>(bits_.size());
}

namespace {

bool chiExactWith(std::span<const double> q, const RobotModel& robot, const DilatedRegion& region,
                  std::vector<geometry::Vec2>& scratch)
{
    if (region.empty())
        return false;
    kinematics::backboneInto(q, robot, scratch);
    return std::any_of(scratch.begin(), scratch.end(), [&](geometry::Vec2 p) { return region.contains(p); });
}

} // namespace

bool chiExact(std::span<const double> q, const RobotModel& robot, const DilatedRegion& region)
{
    thread_local std::vector<geometry::Vec2> scratch;
    return chiExactWith(q, robot, region, scratch);
}

CObsGrid buildCObs(const RobotModel& robot, const DilatedRegion& region, const JointGrid& grid, unsigned threads)
{
    robot.validate();
    if (grid.dims() != robot.dof())
        throw InvalidGeometry("grid dimension does not match robot degrees of freedom");

    const std::size_t total = grid.size();
    std::vector<std::uint8_t> bits(total, 0);
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));

    // Contiguous slices per worker; each cell is written by exactly one worker.
    auto work = [&](std::size_t begin, std::size_t end) {
        std::vector<double> q(grid.dims());
        std::vector<geometry::Vec2> scratch;
        for (std::size_t flat = begin; flat < end; ++flat)
        {
            grid.configuration(flat, q);
            bits[flat] = chiExactWith(q, robot, region, scratch) ? 1 : 0;
        }
    };

    if (threads <= 1)
    {
        work(0, total);
    }
    else
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (total + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t)
        {
            const std::size_t begin = std::min(total, t * chunk);
            const std::size_t end = std::min(total, begin + chunk);
            pool.emplace_back(work, begin, end);
        }
    }
    return CObsGrid(grid, std::move(bits));
}

std::vector<GridComponent> connectedComponents(const CObsGrid& grid)
{
    if (grid.grid().dims() != 2)
        throw InvalidGeometry("connected components are implemented for two-joint grids");
    const JointAxis& a1 = grid.grid().axes()[0];
    const JointAxis& a2 = grid.grid().axes()[1];
    const std::size_t n1 = a1.count;
    const std::size_t n2 = a2.count;

    std::vector<std::int32_t> label(n1 * n2, -1);
    std::vector<GridComponent> out;
    std::vector<std::size_t> queue;
    for (std::size_t start = 0; start < n1 * n2; ++start)
    {
        if (!grid.at(start) || label[start] >= 0)
            continue;
        const auto id = static_cast<std::int32_t>(out.size());
        GridComponent comp;
        queue.assign(1, start);
        label[start] = id;
        for (std::size_t head = 0; head < queue.size(); ++head)
        {
            const std::size_t cur = queue[head];
            const std::size_t k1 = cur / n2;
            const std::size_t k2 = cur % n2;
            comp.cells.push_back({k1, k2});
            auto visit = [&](std::size_t nk1, std::size_t nk2) {
                const std::size_t f = nk1 * n2 + nk2;
                if (grid.at(f) && label[f] < 0)
                {
                    label[f] = id;
                    queue.push_back(f);
                }
            };
            if (k1 > 0)
                visit(k1 - 1, k2);
            if (k1 + 1 < n1)
                visit(k1 + 1, k2);
            if (k2 > 0)
                visit(k1, k2 - 1);
            if (k2 + 1 < n2)
                visit(k1, k2 + 1);
        }
        std::sort(comp.cells.begin(), comp.cells.end());
        comp.points.reserve(comp.cells.size());
        for (const auto& c : comp.cells)
            comp.points.push_back({a1.value(c[0]), a2.value(c[1])});
        out.push_back(std::move(comp));
    }
    return out;
}

UnsafeRegionSet::UnsafeRegionSet(std::vector<UnsafeRegion> regions, std::vector<std::string> warnings)
    : regions_(std::move(regions)), warnings_(std::move(warnings))
{
    index_.reserve(regions_.size());
    for (const UnsafeRegion& r : regions_)
        index_.emplace_back(r.polygon);
}

bool UnsafeRegionSet::contains(geometry::Vec2 q) const noexcept
{
    for (const geometry::PolygonIndex& idx : index_)
        if (idx.contains(q))
            return true;
    return false;
}

UnsafeRegionSet buildUnsafeSet(const CObsGrid& grid, double cAlpha, const AlphaSchedule& schedule)
{
    const std::vector<GridComponent> components = connectedComponents(grid);
    const auto& axes = grid.grid().axes();
    const double deltaQ = std::max(axes[0].step, axes[1].step);

    std::vector<UnsafeRegion> regions;
    std::vector<std::string> warnings;
    regions.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i)
    {
        const GridComponent& comp = components[i];
        AlphaSelection sel = selectAlpha(comp.points, deltaQ, cAlpha, schedule);
        if (sel.outcome == AlphaOutcome::ConvexHullFallback)
            warnings.push_back(fmt::format("component {} ({} points): no valid alpha after {} steps, using convex hull",
                                           i, comp.points.size(), schedule.maxSteps));
        if (sel.containment < schedule.minContainment)
            warnings.push_back(fmt::format("component {}: polygon contains only {:.4f} of its grid points", i,
                                           sel.containment));
        regions.push_back({std::move(sel.polygon), sel.alpha, comp.points.size(), sel.outcome, sel.containment});
    }
    return UnsafeRegionSet(std::move(regions), std::move(warnings));
}

} // namespace forcemap::cspace
