#include "elc/spatial.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace elc
{

namespace
{

constexpr std::uint32_t kLeafSize = 12;

double coord(const Point3& p, int axis)
{
    switch (axis)
    {
    case 0:
        return p.x;
    case 1:
        return p.y;
    default:
        return p.z;
    }
}

}  // namespace

double squared_distance(const Point3& a, const Point3& b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

RadiusIndex::RadiusIndex(const PointCloud& cloud) : points_(cloud.points)
{
    if (points_.empty())
        throw std::invalid_argument("cannot build a radius index over an empty cloud");
    if (points_.size() > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("cloud too large for radius index");
    for (std::size_t i = 0; i < points_.size(); ++i)
    {
        if (!is_finite(points_[i]))
            throw std::invalid_argument("point " + std::to_string(i) + " has non-finite coordinates");
    }

    order_.resize(points_.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i)
        order_[i] = i;
    nodes_.reserve(2 * points_.size() / kLeafSize + 1);
    build(0, static_cast<std::uint32_t>(order_.size()));
}

std::int32_t RadiusIndex::build(std::uint32_t begin, std::uint32_t end)
{
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{begin, end});
    if (end - begin <= kLeafSize)
        return id;

    Point3 lo = points_[order_[begin]];
    Point3 hi = lo;
    for (std::uint32_t i = begin; i < end; ++i)
    {
        const auto& p = points_[order_[i]];
        lo = Point3{std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = Point3{std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    const double spread[3] = {hi.x - lo.x, hi.y - lo.y, hi.z - lo.z};
    const int axis = static_cast<int>(std::max_element(spread, spread + 3) - spread);
    if (spread[axis] <= 0.0)
        return id;  // all points coincide

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t l, std::uint32_t r) {
                         return coord(points_[l], axis) < coord(points_[r], axis);
                     });
    const double split = coord(points_[order_[mid]], axis);

    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.left = left;
    node.right = right;
    node.axis = static_cast<std::uint8_t>(axis);
    node.split = split;
    return id;
}

bool RadiusIndex::indexes(const PointCloud& cloud) const { return cloud.points == points_; }

std::vector<std::size_t> RadiusIndex::find_neighbors(const Point3& q, double r) const
{
    std::vector<std::size_t> out;
    find_neighbors(q, r, out);
    return out;
}

void RadiusIndex::find_neighbors(const Point3& q, double r, std::vector<std::size_t>& out) const
{
    out.clear();
    if (!(r >= 0.0))
        return;
    search(0, q, r * r, out);
    std::sort(out.begin(), out.end());
}

void RadiusIndex::search(std::int32_t node_id, const Point3& q, double r2, std::vector<std::size_t>& out) const
{
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.left < 0)
    {
        for (std::uint32_t i = node.begin; i < node.end; ++i)
        {
            const std::uint32_t idx = order_[i];
            if (squared_distance(points_[idx], q) <= r2)
                out.push_back(idx);
        }
        return;
    }

    // Left holds coordinates <= split, right holds >= split. The far side is
    // pruned with a small slack so that rounding never drops a boundary point;
    // the exact test happens at the leaves.
    const double diff = coord(q, node.axis) - node.split;
    const double slack = r2 * 1e-12 + 1e-300;
    const bool visit_left = diff <= 0.0 || diff * diff <= r2 + slack;
    const bool visit_right = diff >= 0.0 || diff * diff <= r2 + slack;
    if (visit_left)
        search(node.left, q, r2, out);
    if (visit_right)
        search(node.right, q, r2, out);
}

}  // namespace elc
