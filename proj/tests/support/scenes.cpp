#include "support/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace elc::testing
{

PointCloud random_scene(std::mt19937_64& rng, std::size_t min_points, std::size_t max_points)
{
    std::uniform_int_distribution<std::size_t> total_dist(min_points, max_points);
    const std::size_t total = total_dist(rng);

    std::poisson_distribution<int> blob_count_dist(5.0);
    const int n_blobs = 1 + blob_count_dist(rng);
    std::uniform_real_distribution<double> range_dist(3.0, 45.0);
    std::uniform_real_distribution<double> angle_dist(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> height_dist(-1.5, 1.0);
    std::uniform_real_distribution<double> spread_dist(0.15, 0.8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto ring_points = static_cast<std::size_t>(static_cast<double>(total) * (0.15 + 0.15 * unit(rng)));
    const std::size_t blob_points = total - ring_points;

    PointCloud cloud;
    cloud.points.reserve(total);

    for (int b = 0; b < n_blobs; ++b)
    {
        const std::size_t share = blob_points / static_cast<std::size_t>(n_blobs) +
                                  (static_cast<std::size_t>(b) < blob_points % static_cast<std::size_t>(n_blobs));
        const double range = range_dist(rng);
        const double azimuth = angle_dist(rng);
        const Point3 center{range * std::cos(azimuth), range * std::sin(azimuth), height_dist(rng)};
        std::normal_distribution<double> dxy(0.0, spread_dist(rng));
        std::normal_distribution<double> dz(0.0, 0.5 * spread_dist(rng));
        for (std::size_t k = 0; k < share; ++k)
            cloud.points.push_back(Point3{center.x + dxy(rng), center.y + dxy(rng), center.z + dz(rng)});
    }

    // Ring noise: a few partial scan rings, azimuth step fixed, so the spacing
    // between neighbors scales with range; radial jitter also scales with range.
    const int n_rings = 2 + static_cast<int>(unit(rng) * 3.0);
    for (int r = 0; r < n_rings; ++r)
    {
        const std::size_t share = ring_points / static_cast<std::size_t>(n_rings) +
                                  (static_cast<std::size_t>(r) < ring_points % static_cast<std::size_t>(n_rings));
        const double range = range_dist(rng);
        const double z = -1.7 + 0.1 * r;
        const double step = (0.5 + 2.5 * unit(rng)) * std::numbers::pi / 180.0;
        double azimuth = angle_dist(rng);
        std::normal_distribution<double> jitter(0.0, 0.01 * range);
        for (std::size_t k = 0; k < share; ++k)
        {
            const double rr = range + jitter(rng);
            cloud.points.push_back(Point3{rr * std::cos(azimuth), rr * std::sin(azimuth), z + 0.02 * jitter(rng)});
            azimuth += step * (0.5 + unit(rng));
        }
    }
    return cloud;
}

std::vector<Point3> grid_block(Point3 origin, double step_xy, double step_z, int nx, int ny, int nz)
{
    std::vector<Point3> pts;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k < nz; ++k)
                pts.push_back(Point3{origin.x + i * step_xy, origin.y + j * step_xy, origin.z + k * step_z});
    return pts;
}

PointCloud three_blob_scene()
{
    PointCloud cloud;
    for (const Point3 origin : {Point3{10.0, 0.0, 0.0}, Point3{0.0, 15.0, 0.0}, Point3{-20.0, -5.0, 0.0}})
    {
        const auto block = grid_block(origin, 0.1, 0.1, 5, 5, 5);
        cloud.points.insert(cloud.points.end(), block.begin(), block.end());
    }
    return cloud;
}

io::ScanBundle known_fragment_scene()
{
    PointCloud cloud;
    std::vector<SemanticId> semantic;
    std::vector<InstanceId> instance;
    auto add = [&](const std::vector<Point3>& pts, SemanticId cls, InstanceId id) {
        cloud.points.insert(cloud.points.end(), pts.begin(), pts.end());
        semantic.insert(semantic.end(), pts.size(), cls);
        instance.insert(instance.end(), pts.size(), id);
    };

    add(grid_block({-20.0, -20.0, -1.7}, 1.0, 1.0, 41, 41, 1), 40, 0);       // road
    add(grid_block({10.0, -0.8, -1.0}, 0.1, 0.2, 11, 17, 8), 10, 1);        // car, front fragment
    add(grid_block({11.3, -0.8, -1.0}, 0.1, 0.2, 11, 17, 8), 10, 2);        // car, rear fragment
    add(grid_block({-0.25, 15.0, -1.0}, 0.1, 0.1, 6, 6, 6), 0, 0);          // unlabeled box
    return make_bundle(std::move(cloud), std::move(semantic), std::move(instance));
}

PointCloud rotate_z(const PointCloud& cloud, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    PointCloud out = cloud;
    for (auto& p : out.points)
        p = Point3{c * p.x - s * p.y, s * p.x + c * p.y, p.z};
    return out;
}

PointCloud permute(const PointCloud& cloud, const std::vector<std::size_t>& order)
{
    PointCloud out;
    out.points.reserve(order.size());
    for (std::size_t i : order)
        out.points.push_back(cloud.points[i]);
    return out;
}

std::vector<std::size_t> random_order(std::mt19937_64& rng, std::size_t n)
{
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

io::ScanBundle make_bundle(PointCloud cloud, std::vector<SemanticId> semantic, std::vector<InstanceId> instance)
{
    io::ScanBundle bundle;
    bundle.cloud = std::move(cloud);
    bundle.semantic = std::move(semantic);
    bundle.instance = std::move(instance);
    bundle.validate();
    return bundle;
}

}  // namespace elc::testing
