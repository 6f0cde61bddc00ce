#pragma once

#include <cstddef>
#include <map>
#include <string_view>
#include <vector>

#include "elc/core_types.hpp"
#include "elc/io_kitti.hpp"

namespace elc
{

enum class ClusterAlgorithm
{
    ellipsoidal,
    euclidean,
};

ClusterAlgorithm parse_algorithm(std::string_view name);
std::string_view to_string(ClusterAlgorithm algo);

struct PipelineConfig
{
    EllipsoidParams params;
    ClassConfig classes = ClassConfig::semantic_kitti();
    double diffuse_r = 1.0;
    bool refine_known = true;
    bool cluster_unknown = true;
    bool early_termination = true;
    std::size_t unknown_min_points = 10;
    ClusterAlgorithm algorithm = ClusterAlgorithm::ellipsoidal;
    /// Fixed radius for the euclidean baseline; half of rho by default.
    double euclidean_radius = EllipsoidParams::kDefaultRho / 2.0;

    /// Throws std::invalid_argument for inconsistent settings.
    void validate() const;
};

enum class InstanceOrigin
{
    known,
    unknown,
};

struct OisResult
{
    InstanceLabeling labeling;
    std::vector<SemanticId> semantic;
    /// origin[k - 1] describes instance k. Known instances come first.
    std::vector<InstanceOrigin> origin;
    std::size_t n_known = 0;
    std::size_t n_unknown = 0;
    /// Majority vote of the input semantic labels per output instance.
    std::map<InstanceId, SemanticId> instance_semantic;

    std::size_t n_instances() const { return n_known + n_unknown; }
    std::vector<io::LabelRecord> to_records() const;
};

/// Disjoint point sets covering the scan. Index lists are ascending.
struct PointSplit
{
    std::vector<std::size_t> background;
    std::vector<std::size_t> known;
    std::vector<InstanceId> known_ids;  ///< parallel to `known`
    std::vector<std::size_t> unknown;
};

/// background: semantic class is background. known: instance >= 1 and a known
/// thing class. unknown: everything else, including thing-class points the
/// network left without an instance.
PointSplit split_points(const io::ScanBundle& scan, const ClassConfig& classes);

/// Background removal, known subtraction, clustering of the remaining points,
/// optional refinement of the known instances, and merge into one labeling.
/// Background and discarded points carry instance 0.
OisResult run_pipeline(const io::ScanBundle& scan, const PipelineConfig& cfg);

}  // namespace elc
