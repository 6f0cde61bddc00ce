#include "elc/pipeline.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

#include "elc/clustering.hpp"
#include "elc/refinement.hpp"

namespace elc
{

namespace
{

// Renumbers `ids` densely by first occurrence and drops clusters smaller than
// `min_points` to 0. Returns the number of surviving clusters.
std::size_t drop_small_clusters(std::vector<InstanceId>& ids, std::size_t min_points)
{
    std::unordered_map<InstanceId, std::size_t> counts;
    for (InstanceId id : ids)
        ++counts[id];
    std::unordered_map<InstanceId, InstanceId> dense;
    for (auto& id : ids)
    {
        if (counts[id] < min_points)
        {
            id = 0;
            continue;
        }
        auto [it, inserted] = dense.try_emplace(id, static_cast<InstanceId>(dense.size() + 1));
        id = it->second;
    }
    return dense.size();
}

}  // namespace

ClusterAlgorithm parse_algorithm(std::string_view name)
{
    if (name == "elc" || name == "ellipsoidal")
        return ClusterAlgorithm::ellipsoidal;
    if (name == "euclidean" || name == "ec")
        return ClusterAlgorithm::euclidean;
    throw std::invalid_argument("unknown clustering algorithm '" + std::string(name) + "'");
}

std::string_view to_string(ClusterAlgorithm algo)
{
    return algo == ClusterAlgorithm::ellipsoidal ? "elc" : "euclidean";
}

void PipelineConfig::validate() const
{
    classes.validate();
    if (!(diffuse_r > 0.0))
        throw std::invalid_argument("diffuse radius must be positive, got " + std::to_string(diffuse_r));
    if (unknown_min_points < 1)
        throw std::invalid_argument("minimum unknown cluster size must be at least 1");
    if (!(euclidean_radius > 0.0))
        throw std::invalid_argument("euclidean radius must be positive, got " + std::to_string(euclidean_radius));
}

std::vector<io::LabelRecord> OisResult::to_records() const
{
    std::vector<io::LabelRecord> records(labeling.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        records[i] = io::LabelRecord{semantic[i], labeling.ids[i]};
    return records;
}

PointSplit split_points(const io::ScanBundle& scan, const ClassConfig& classes)
{
    scan.validate();
    PointSplit split;
    for (std::size_t i = 0; i < scan.size(); ++i)
    {
        const SemanticId cls = scan.semantic[i];
        if (classes.is_background(cls))
        {
            split.background.push_back(i);
        }
        else if (scan.instance[i] >= 1 && classes.is_known_thing(cls))
        {
            split.known.push_back(i);
            split.known_ids.push_back(scan.instance[i]);
        }
        else
        {
            split.unknown.push_back(i);
        }
    }
    return split;
}

OisResult run_pipeline(const io::ScanBundle& scan, const PipelineConfig& cfg)
{
    cfg.validate();
    scan.validate();

    OisResult result;
    result.semantic = scan.semantic;
    result.labeling.ids.assign(scan.size(), 0);
    if (scan.size() == 0)
        return result;

    const PointSplit split = split_points(scan, cfg.classes);

    // Known instances: refined or passed through, then renumbered from 1.
    if (!split.known.empty())
    {
        std::vector<InstanceId> known_ids;
        if (cfg.refine_known)
        {
            KnownInstanceSet known{scan.cloud.select(split.known), split.known_ids, cfg.diffuse_r};
            known_ids = refine_known(known, cfg.params, cfg.early_termination).ids;
        }
        else
        {
            known_ids = split.known_ids;
        }
        result.n_known = drop_small_clusters(known_ids, 1);
        for (std::size_t k = 0; k < split.known.size(); ++k)
            result.labeling.ids[split.known[k]] = known_ids[k];
    }

    if (cfg.cluster_unknown && !split.unknown.empty())
    {
        const PointCloud candidates = scan.cloud.select(split.unknown);
        ClusterRun run = cfg.algorithm == ClusterAlgorithm::ellipsoidal
                             ? ellipsoidal_cluster(candidates, cfg.params, cfg.early_termination)
                             : euclidean_cluster(candidates, cfg.euclidean_radius);
        auto& ids = run.labeling.ids;
        result.n_unknown = drop_small_clusters(ids, cfg.unknown_min_points);
        const auto offset = static_cast<InstanceId>(result.n_known);
        for (std::size_t k = 0; k < split.unknown.size(); ++k)
        {
            if (ids[k] != 0)
                result.labeling.ids[split.unknown[k]] = offset + ids[k];
        }
    }

    result.origin.assign(result.n_known, InstanceOrigin::known);
    result.origin.resize(result.n_known + result.n_unknown, InstanceOrigin::unknown);
    result.instance_semantic = majority_semantic(result.labeling, scan.semantic);
    return result;
}

}  // namespace elc
