#include "elc/clustering.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace elc
{

namespace
{

// The ellipsoid fits in the ball of its largest semi-axis. The fetch radius is
// inflated by a relative epsilon so rounding in the rotated frame cannot drop a
// point that passes the membership test right at the tip of the long axis.
constexpr double kFetchInflation = 1.0 + 1e-9;

// Dense IDs by smallest member index. `ids[i]` are provisional and
// collapsed through `graph`.
std::size_t remap_through(std::vector<InstanceId>& ids, MergeGraph& graph)
{
    std::unordered_map<InstanceId, InstanceId> dense;
    dense.reserve(graph.max_id() + 1);
    for (auto& id : ids)
    {
        const InstanceId root = graph.find(id);
        auto [it, inserted] = dense.try_emplace(root, static_cast<InstanceId>(dense.size() + 1));
        id = it->second;
    }
    return dense.size();
}

}  // namespace

void MergeGraph::add(InstanceId id)
{
    if (id >= parent_.size())
    {
        const std::size_t old = parent_.size();
        parent_.resize(static_cast<std::size_t>(id) + 1);
        rank_.resize(parent_.size(), 0);
        for (std::size_t i = old; i < parent_.size(); ++i)
            parent_[i] = static_cast<InstanceId>(i);
    }
}

InstanceId MergeGraph::find(InstanceId id)
{
    add(id);
    InstanceId root = id;
    while (parent_[root] != root)
        root = parent_[root];
    while (parent_[id] != root)
    {
        const InstanceId next = parent_[id];
        parent_[id] = root;
        id = next;
    }
    return root;
}

void MergeGraph::unite(InstanceId a, InstanceId b)
{
    InstanceId ra = find(a);
    InstanceId rb = find(b);
    if (ra == rb)
        return;
    if (rank_[ra] < rank_[rb])
        std::swap(ra, rb);
    parent_[rb] = ra;
    if (rank_[ra] == rank_[rb])
        ++rank_[ra];
}

double ellipsoid_level(const Point3& query, const EllipsoidAxes& axes, const Point3& candidate)
{
    const double dx = candidate.x - query.x;
    const double dy = candidate.y - query.y;
    const double dz = candidate.z - query.z;
    const double along = dx * axes.cos_lambda + dy * axes.sin_lambda;
    const double across = -dx * axes.sin_lambda + dy * axes.cos_lambda;
    return (along * along) / (axes.a * axes.a) + (across * across) / (axes.b * axes.b) +
           (dz * dz) / (axes.c * axes.c);
}

bool in_ellipsoid(const Point3& query, const EllipsoidAxes& axes, const Point3& candidate)
{
    return ellipsoid_level(query, axes, candidate) <= 1.0;
}

ClusterRun ellipsoidal_cluster(const PointCloud& cloud, const EllipsoidParams& params, bool early_termination)
{
    if (cloud.empty())
        throw std::invalid_argument("ellipsoidal clustering needs a non-empty cloud");
    const RadiusIndex index(cloud);
    return ellipsoidal_cluster(cloud, index, params, early_termination);
}

ClusterRun ellipsoidal_cluster(const PointCloud& cloud, const RadiusIndex& index, const EllipsoidParams& params,
                               bool early_termination)
{
    return ellipsoidal_cluster(
        cloud, index, [&params](const Point3& p) { return ellipsoid_axes(p, params); }, early_termination);
}

ClusterRun ellipsoidal_cluster(const PointCloud& cloud, const RadiusIndex& index, const AxesFunction& axes_of,
                               bool early_termination)
{
    if (cloud.empty())
        throw std::invalid_argument("ellipsoidal clustering needs a non-empty cloud");
    if (!index.indexes(cloud))
        throw std::invalid_argument("radius index was built over a different cloud");

    const std::size_t n = cloud.size();
    const auto& pts = cloud.points;
    std::vector<InstanceId> ids(n, 0);
    std::vector<char> extended(n, 0);
    MergeGraph graph;
    std::deque<std::size_t> queue;
    std::vector<std::size_t> candidates;

    InstanceId current = 1;
    for (std::size_t seed = 0; seed < n; ++seed)
    {
        if (extended[seed])
            continue;
        queue.push_back(seed);
        graph.add(current);

        while (!queue.empty())
        {
            const std::size_t q = queue.front();
            queue.pop_front();
            if (extended[q])
                continue;
            // Marking on expansion keeps every point from expanding twice.
            extended[q] = 1;
            ids[q] = current;

            const EllipsoidAxes axes = axes_of(pts[q]);
            const double interior = axes.min_axis();
            index.find_neighbors(pts[q], axes.max_axis() * kFetchInflation, candidates);

            for (std::size_t c : candidates)
            {
                if (!in_ellipsoid(pts[q], axes, pts[c]))
                    continue;
                if (ids[c] != 0 && ids[c] != current)
                    graph.unite(ids[c], current);
                if (extended[c])
                    continue;

                const bool fresh = ids[c] == 0;
                ids[c] = current;
                if (early_termination && std::sqrt(squared_distance(pts[q], pts[c])) <= interior)
                    extended[c] = 1;
                else if (fresh)
                    queue.push_back(c);
            }
        }
        ++current;
    }

    ClusterRun run;
    run.early_termination = early_termination;
    run.n_clusters = remap_through(ids, graph);
    run.labeling.ids = std::move(ids);
    return run;
}

ClusterRun brute_force_cluster(const PointCloud& cloud, const EllipsoidParams& params)
{
    return brute_force_cluster(cloud, [&params](const Point3& p) { return ellipsoid_axes(p, params); });
}

ClusterRun brute_force_cluster(const PointCloud& cloud, const AxesFunction& axes_of)
{
    const std::size_t n = cloud.size();
    if (n > kBruteForceLimit)
        throw std::length_error("brute-force clustering refuses " + std::to_string(n) + " points (limit " +
                                std::to_string(kBruteForceLimit) + ")");

    const auto& pts = cloud.points;
    std::vector<EllipsoidAxes> axes(n);
    for (std::size_t i = 0; i < n; ++i)
        axes[i] = axes_of(pts[i]);

    std::vector<std::vector<std::size_t>> adjacency(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = i + 1; j < n; ++j)
        {
            if (in_ellipsoid(pts[i], axes[i], pts[j]) || in_ellipsoid(pts[j], axes[j], pts[i]))
            {
                adjacency[i].push_back(j);
                adjacency[j].push_back(i);
            }
        }
    }

    ClusterRun run;
    run.labeling.ids.assign(n, 0);
    auto& ids = run.labeling.ids;
    std::vector<std::size_t> stack;
    InstanceId next = 0;
    for (std::size_t s = 0; s < n; ++s)
    {
        if (ids[s] != 0)
            continue;
        ids[s] = ++next;
        stack.push_back(s);
        while (!stack.empty())
        {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v : adjacency[u])
            {
                if (ids[v] == 0)
                {
                    ids[v] = next;
                    stack.push_back(v);
                }
            }
        }
    }
    run.n_clusters = next;
    return run;
}

ClusterRun euclidean_cluster(const PointCloud& cloud, double radius)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("euclidean clustering radius must be positive, got " + std::to_string(radius));

    ClusterRun run;
    if (cloud.empty())
        return run;

    const RadiusIndex index(cloud);
    const std::size_t n = cloud.size();
    auto& ids = run.labeling.ids;
    ids.assign(n, 0);
    std::deque<std::size_t> queue;
    std::vector<std::size_t> neighbors;
    InstanceId next = 0;
    for (std::size_t s = 0; s < n; ++s)
    {
        if (ids[s] != 0)
            continue;
        ids[s] = ++next;
        queue.push_back(s);
        while (!queue.empty())
        {
            const std::size_t q = queue.front();
            queue.pop_front();
            index.find_neighbors(cloud.points[q], radius, neighbors);
            for (std::size_t c : neighbors)
            {
                if (ids[c] == 0)
                {
                    ids[c] = next;
                    queue.push_back(c);
                }
            }
        }
    }
    run.n_clusters = next;
    return run;
}

InstanceLabeling canonicalize(const InstanceLabeling& labeling)
{
    InstanceLabeling out;
    out.ids.reserve(labeling.size());
    std::unordered_map<InstanceId, InstanceId> dense;
    for (InstanceId id : labeling.ids)
    {
        if (id == 0)
        {
            out.ids.push_back(0);
            continue;
        }
        auto [it, inserted] = dense.try_emplace(id, static_cast<InstanceId>(dense.size() + 1));
        out.ids.push_back(it->second);
    }
    return out;
}

}  // namespace elc
