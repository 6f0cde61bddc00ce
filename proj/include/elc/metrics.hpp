#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "elc/core_types.hpp"

namespace elc::metrics
{

struct Overlap
{
    std::size_t pred = 0;   ///< slot in MatchTable::pred_sizes
    std::size_t count = 0;  ///< |p ∩ g| over the evaluation mask
};

struct GtInstance
{
    InstanceId id = 0;
    SemanticId semantic = 0;  ///< majority class of the instance's points
    bool known = false;
    std::size_t size = 0;  ///< |g| over the evaluation mask
    std::vector<Overlap> overlaps;
};

/// Overlap counts between ground-truth and predicted instances of one or more
/// scans. Tables of several scans are pooled with `append`.
struct MatchTable
{
    std::vector<GtInstance> gt;
    /// |p| over all points of the scan, so prediction points that leak into
    /// un-instanced ground truth still count against IoU.
    std::vector<std::size_t> pred_sizes;

    void append(const MatchTable& other);
};

/// Which ground-truth instances a score is computed over.
struct GroupFilter
{
    enum class Kind
    {
        all,
        known,
        unknown,
        semantic_class,
    };

    Kind kind = Kind::all;
    SemanticId cls = 0;

    static GroupFilter all() { return {Kind::all, 0}; }
    static GroupFilter known() { return {Kind::known, 0}; }
    static GroupFilter unknown() { return {Kind::unknown, 0}; }
    static GroupFilter of_class(SemanticId c) { return {Kind::semantic_class, c}; }

    bool accepts(const GtInstance& g) const;
};

/// Counts overlaps over the points selected by `eval_mask` that carry a ground
/// truth instance (empty mask = all of them). Predicted instance 0 never
/// overlaps. A gt instance is known when its majority class is in
/// `known_classes`. Throws std::invalid_argument on length mismatch.
MatchTable build_match_table(std::span<const InstanceId> gt_instance, std::span<const SemanticId> gt_semantic,
                             std::span<const InstanceId> pred, const std::set<SemanticId>& known_classes,
                             std::span<const char> eval_mask = {});

/// Association score: mean over gt of (1/|g|) * sum_p |p∩g| * IoU(p, g).
/// Empty when the group has no gt instance.
std::optional<double> s_assoc(const MatchTable& table, const GroupFilter& group);

struct IouRecall
{
    double iou = 0.0;
    double recall = 0.0;
};

/// Per gt, the best IoU over predictions. recall is the share of gt whose best
/// reaches tau; iou sums those best values over |GT|. Empty for an empty group.
/// Throws std::invalid_argument unless 0 < tau <= 1.
std::optional<IouRecall> iou_recall_at(const MatchTable& table, double tau, const GroupFilter& group);

struct ThresholdScore
{
    double tau = 0.0;
    std::optional<IouRecall> value;
};

struct GroupScores
{
    std::size_t n_gt = 0;
    std::optional<double> s_assoc;
    std::vector<ThresholdScore> at;
};

struct MetricReport
{
    std::vector<double> thresholds;
    std::map<SemanticId, std::optional<double>> per_class;
    std::map<SemanticId, std::size_t> per_class_count;
    GroupScores known;
    GroupScores unknown;
    GroupScores all;
};

enum class Aggregation
{
    pooled,         ///< one table over every scan
    per_scan_mean,  ///< score each scan, average the scans where the group is present
};

inline const std::vector<double> kDefaultThresholds = {0.9, 0.7, 0.5};

MetricReport make_report(std::span<const MatchTable> tables, std::span<const double> thresholds,
                         std::span<const SemanticId> classes, Aggregation aggregation = Aggregation::pooled);

/// SemanticKITTI class name, or "class_<id>".
std::string class_name(SemanticId id);

/// Human readable table, one row per class and group. Absent scores print as "-".
void write_report_text(const MetricReport& report, std::ostream& out);
/// `key=value` lines; absent scores are omitted.
void write_report_kv(const MetricReport& report, std::ostream& out);

}  // namespace elc::metrics
