#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "elc/core_types.hpp"
#include "elc/spatial.hpp"

namespace elc
{

/// Disjoint-set over provisional instance IDs 1..N with path compression and
/// union by size. Connected IDs end up in the same final instance.
class MergeGraph
{
  public:
    /// Registers `id` as a vertex, growing the ID range if needed.
    void add(InstanceId id);
    /// Adds an undirected edge; registers both IDs.
    void unite(InstanceId a, InstanceId b);
    InstanceId find(InstanceId id);
    bool connected(InstanceId a, InstanceId b) { return find(a) == find(b); }

    /// Highest registered ID.
    InstanceId max_id() const { return static_cast<InstanceId>(parent_.empty() ? 0 : parent_.size() - 1); }

  private:
    std::vector<InstanceId> parent_;
    std::vector<std::size_t> rank_;
};

struct ClusterRun
{
    InstanceLabeling labeling;
    std::size_t n_clusters = 0;
    bool early_termination = false;
};

/// Maps each query point to its ellipsoid. The default is `ellipsoid_axes`
/// with fixed parameters; tests substitute constant axes.
using AxesFunction = std::function<EllipsoidAxes(const Point3&)>;

/// Ellipsoid membership test for `candidate` in the neighborhood of `query`.
/// The first term runs along the sensor ray, the second across it, the third
/// is vertical. Boundary points count as inside.
bool in_ellipsoid(const Point3& query, const EllipsoidAxes& axes, const Point3& candidate);

/// Left-hand side of the membership inequality; `in_ellipsoid` is `<= 1`.
double ellipsoid_level(const Point3& query, const EllipsoidAxes& axes, const Point3& candidate);

/// Range-adaptive ellipsoidal clustering.
///
/// Seeds unvisited points in storage order and grows each seed breadth-first.
/// Every popped point fetches candidates within its largest semi-axis, keeps
/// the ones inside its ellipsoid, and records a merge edge whenever a kept
/// candidate already belongs to a different provisional instance. With early
/// termination enabled, candidates within the smallest semi-axis of the query
/// are taken as cluster interior and are never expanded themselves. Each point
/// expands at most once. Provisional IDs are finally collapsed through the
/// merge graph and renumbered 1..K in order of each cluster's smallest point
/// index.
///
/// Throws std::invalid_argument for an empty cloud or an index built over
/// different points.
ClusterRun ellipsoidal_cluster(const PointCloud& cloud, const EllipsoidParams& params, bool early_termination = true);
ClusterRun ellipsoidal_cluster(const PointCloud& cloud, const RadiusIndex& index, const EllipsoidParams& params,
                               bool early_termination = true);
ClusterRun ellipsoidal_cluster(const PointCloud& cloud, const RadiusIndex& index, const AxesFunction& axes_of,
                               bool early_termination = true);

/// Largest cloud accepted by `brute_force_cluster`.
inline constexpr std::size_t kBruteForceLimit = 5000;

/// O(n^2) reference: connected components of the graph linking i and j when
/// either lies in the other's ellipsoid. IDs ordered by smallest member index.
/// Throws std::length_error above kBruteForceLimit points.
ClusterRun brute_force_cluster(const PointCloud& cloud, const EllipsoidParams& params);
ClusterRun brute_force_cluster(const PointCloud& cloud, const AxesFunction& axes_of);

/// Fixed-radius (closed ball) connected components. IDs ordered by smallest
/// member index. Throws std::invalid_argument unless radius > 0.
ClusterRun euclidean_cluster(const PointCloud& cloud, double radius);

/// Dense renumbering 1..K by first occurrence; 0 stays 0.
InstanceLabeling canonicalize(const InstanceLabeling& labeling);

}  // namespace elc
