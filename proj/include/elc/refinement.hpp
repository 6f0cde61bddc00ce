#pragma once

#include <map>
#include <span>
#include <vector>

#include "elc/clustering.hpp"
#include "elc/core_types.hpp"

namespace elc
{

/// Points of the known (close-set) instances with their original instance IDs.
struct KnownInstanceSet
{
    static constexpr double kDefaultRadius = 1.0;

    PointCloud cloud;
    std::vector<InstanceId> ids;
    double radius = kDefaultRadius;

    /// Throws std::invalid_argument on length mismatch, an ID of 0 or radius <= 0.
    void validate() const;
};

/// Groups of original instance IDs that touch within `known.radius`, closed
/// transitively. Each group is sorted ascending; groups are ordered by their
/// smallest ID. Every original ID appears in exactly one group.
std::vector<std::vector<InstanceId>> diffuse_groups(const KnownInstanceSet& known);

/// Re-clusters the union of points of each diffuse group with ellipsoidal
/// clustering. Output IDs are globally unique, dense 1..K, numbered group by
/// group; every known point receives an ID >= 1. Fragments may merge and an
/// original instance may also split.
InstanceLabeling refine_known(const KnownInstanceSet& known, const EllipsoidParams& params,
                              bool early_termination = true);

/// Majority semantic class per instance ID (ties go to the smaller class ID).
/// ID 0 is skipped.
std::map<InstanceId, SemanticId> majority_semantic(const InstanceLabeling& labeling,
                                                   std::span<const SemanticId> semantic);

}  // namespace elc
