#pragma once

// Reference implementations used only by tests. None of them calls into the
// spatial index or the clustering code they are checked against.

#include <cstddef>
#include <set>
#include <vector>

#include "elc/core_types.hpp"

namespace elc::testing
{

/// Every i with |p_i - q| <= r, ascending.
std::vector<std::size_t> linear_scan(const std::vector<Point3>& points, const Point3& q, double r);

/// Connected components of the closed-ball graph, O(n^2).
std::vector<InstanceId> fixed_radius_components(const std::vector<Point3>& points, double r);

/// True if both labelings induce the same partition (IDs may differ, 0 is an ordinary label).
bool same_partition(const std::vector<InstanceId>& a, const std::vector<InstanceId>& b);

/// True if every label class of `fine` lies inside a single class of `coarse`.
bool is_refinement_of(const std::vector<InstanceId>& fine, const std::vector<InstanceId>& coarse);

/// Groups of instance IDs whose pairwise minimum point distance is <= r,
/// closed transitively. Groups sorted, ordered by smallest ID.
std::vector<std::vector<InstanceId>> transitive_instance_groups(const std::vector<Point3>& points,
                                                                const std::vector<InstanceId>& ids, double r);

/// Number of distinct nonzero labels.
std::size_t count_instances(const std::vector<InstanceId>& ids);

}  // namespace elc::testing
