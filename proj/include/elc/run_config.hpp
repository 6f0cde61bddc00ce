#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "elc/core_types.hpp"
#include "elc/metrics.hpp"
#include "elc/pipeline.hpp"

namespace elc
{

/// Bad command-line or configuration input, detected before touching any data.
class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Raw, unvalidated run settings as they come from a config file and flags.
///
/// Config files are JSON objects with flat keys:
///
///     {
///       "rho": 2.0, "theta": 2.0, "phi": 7.5, "d_min": 0.001,
///       "background_ids": [40, 44, 48, 49, 70, 72],
///       "known_thing_ids": [10, 11, 15, 18, 20, 30, 31, 32],
///       "diffuse_r": 1.0, "refine": true, "early_termination": true,
///       "min_unknown_points": 10, "algo": "elc", "euclidean_radius": 1.0,
///       "thresholds": [0.9, 0.7, 0.5], "aggregation": "pooled"
///     }
///
/// Every key is optional; unknown keys are rejected.
struct Settings
{
    double rho = EllipsoidParams::kDefaultRho;
    double theta_deg = EllipsoidParams::kDefaultThetaDeg;
    double phi_deg = EllipsoidParams::kDefaultPhiDeg;
    double d_min = EllipsoidParams::kDefaultMinRange;
    std::set<SemanticId> background_ids = ClassConfig::semantic_kitti().background_ids;
    std::set<SemanticId> known_thing_ids = ClassConfig::semantic_kitti().known_thing_ids;
    double diffuse_r = 1.0;
    bool refine = true;
    bool early_termination = true;
    long long min_unknown_points = 10;
    std::string algo = "elc";
    /// Defaults to rho / 2 when unset.
    std::optional<double> euclidean_radius;
    std::vector<double> thresholds = metrics::kDefaultThresholds;
    std::string aggregation = "pooled";

    /// Throws UsageError naming the offending setting.
    PipelineConfig to_pipeline() const;
    metrics::Aggregation to_aggregation() const;
    /// Throws UsageError unless every threshold lies in (0, 1].
    void check_thresholds() const;
};

/// Overlays keys of a JSON object onto `settings`. Throws UsageError.
void merge_settings_json(Settings& settings, const std::string& json_text);
void merge_settings_file(Settings& settings, const std::filesystem::path& path);

/// Parses "0.9,0.7,0.5".
std::vector<double> parse_thresholds(const std::string& text);

}  // namespace elc
