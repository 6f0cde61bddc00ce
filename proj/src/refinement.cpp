#include "elc/refinement.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "elc/spatial.hpp"

namespace elc
{

void KnownInstanceSet::validate() const
{
    if (ids.size() != cloud.size())
        throw std::invalid_argument("known instance set has " + std::to_string(ids.size()) + " IDs for " +
                                    std::to_string(cloud.size()) + " points");
    if (!(radius > 0.0))
        throw std::invalid_argument("diffuse radius must be positive, got " + std::to_string(radius));
    if (std::find(ids.begin(), ids.end(), InstanceId{0}) != ids.end())
        throw std::invalid_argument("known instance set contains points without an instance ID");
}

std::vector<std::vector<InstanceId>> diffuse_groups(const KnownInstanceSet& known)
{
    known.validate();
    if (known.cloud.empty())
        return {};

    // Slot per original ID, ordered ascending so the outcome does not depend on point order.
    std::vector<InstanceId> existing(known.ids);
    std::sort(existing.begin(), existing.end());
    existing.erase(std::unique(existing.begin(), existing.end()), existing.end());
    std::unordered_map<InstanceId, std::size_t> slot_of;
    for (std::size_t s = 0; s < existing.size(); ++s)
        slot_of.emplace(existing[s], s);

    std::vector<std::vector<std::size_t>> members(existing.size());
    for (std::size_t i = 0; i < known.ids.size(); ++i)
        members[slot_of.at(known.ids[i])].push_back(i);

    const RadiusIndex index(known.cloud);
    std::vector<char> grouped(existing.size(), 0);
    std::vector<std::vector<InstanceId>> groups;
    std::deque<std::size_t> query;
    std::vector<std::size_t> neighbors;

    for (std::size_t start = 0; start < existing.size(); ++start)
    {
        if (grouped[start])
            continue;
        grouped[start] = 1;
        std::vector<InstanceId> group{existing[start]};
        query.assign(members[start].begin(), members[start].end());

        while (!query.empty())
        {
            const std::size_t q = query.front();
            query.pop_front();
            index.find_neighbors(known.cloud.points[q], known.radius, neighbors);
            for (std::size_t nb : neighbors)
            {
                const std::size_t s = slot_of.at(known.ids[nb]);
                if (grouped[s])
                    continue;
                grouped[s] = 1;
                group.push_back(existing[s]);
                query.insert(query.end(), members[s].begin(), members[s].end());
            }
        }
        std::sort(group.begin(), group.end());
        groups.push_back(std::move(group));
    }
    return groups;
}

InstanceLabeling refine_known(const KnownInstanceSet& known, const EllipsoidParams& params, bool early_termination)
{
    const auto groups = diffuse_groups(known);

    std::unordered_map<InstanceId, std::size_t> group_of;
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (InstanceId id : groups[g])
            group_of.emplace(id, g);

    std::vector<std::vector<std::size_t>> group_points(groups.size());
    for (std::size_t i = 0; i < known.ids.size(); ++i)
        group_points[group_of.at(known.ids[i])].push_back(i);

    InstanceLabeling refined;
    refined.ids.assign(known.cloud.size(), 0);
    InstanceId offset = 0;
    for (const auto& indices : group_points)
    {
        const PointCloud part = known.cloud.select(indices);
        const ClusterRun run = ellipsoidal_cluster(part, params, early_termination);
        for (std::size_t k = 0; k < indices.size(); ++k)
            refined.ids[indices[k]] = offset + run.labeling.ids[k];
        offset += static_cast<InstanceId>(run.n_clusters);
    }
    return refined;
}

std::map<InstanceId, SemanticId> majority_semantic(const InstanceLabeling& labeling,
                                                   std::span<const SemanticId> semantic)
{
    if (semantic.size() != labeling.size())
        throw std::invalid_argument("semantic labels and instance labeling differ in length");

    std::map<InstanceId, std::map<SemanticId, std::size_t>> votes;
    for (std::size_t i = 0; i < labeling.size(); ++i)
    {
        if (labeling.ids[i] != 0)
            ++votes[labeling.ids[i]][semantic[i]];
    }

    std::map<InstanceId, SemanticId> winner;
    for (const auto& [id, tally] : votes)
    {
        // std::map iterates classes ascending, so strict > keeps the smallest on ties.
        SemanticId best = tally.begin()->first;
        std::size_t best_count = 0;
        for (const auto& [cls, count] : tally)
        {
            if (count > best_count)
            {
                best = cls;
                best_count = count;
            }
        }
        winner.emplace(id, best);
    }
    return winner;
}

}  // namespace elc
