#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "elc/core_types.hpp"

namespace elc
{

/// Static kd-tree answering exact closed-ball radius queries.
///
/// The index keeps its own copy of the points, so it stays valid if the source
/// cloud goes away. Once built it is read-only and can be queried from several
/// threads at once.
class RadiusIndex
{
  public:
    /// Throws std::invalid_argument for an empty cloud or non-finite coordinates.
    explicit RadiusIndex(const PointCloud& cloud);

    std::size_t size() const { return points_.size(); }
    const std::vector<Point3>& points() const { return points_; }

    /// True if the index was built over exactly these points in this order.
    bool indexes(const PointCloud& cloud) const;

    /// Indices i with |p_i - q| <= r, sorted ascending.
    std::vector<std::size_t> find_neighbors(const Point3& q, double r) const;
    /// Same as above, reusing `out` (cleared first).
    void find_neighbors(const Point3& q, double r, std::vector<std::size_t>& out) const;

  private:
    struct Node
    {
        // Leaves hold [begin, end) in order_. Inner nodes split on `axis` at `split`
        // and store their children at left/right.
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::uint8_t axis = 0;
        double split = 0.0;
    };

    std::int32_t build(std::uint32_t begin, std::uint32_t end);
    void search(std::int32_t node, const Point3& q, double r2, std::vector<std::size_t>& out) const;

    std::vector<Point3> points_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
};

double squared_distance(const Point3& a, const Point3& b);

}  // namespace elc
