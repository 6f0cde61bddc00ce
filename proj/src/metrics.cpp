#include "elc/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace elc::metrics
{

namespace
{

double iou(std::size_t inter, std::size_t gt_size, std::size_t pred_size)
{
    const std::size_t uni = gt_size + pred_size - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double best_iou(const MatchTable& table, const GtInstance& g)
{
    double best = 0.0;
    for (const auto& o : g.overlaps)
        best = std::max(best, iou(o.count, g.size, table.pred_sizes[o.pred]));
    return best;
}

std::string format_score(const std::optional<double>& v)
{
    if (!v)
        return "-";
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << *v;
    return s.str();
}

std::string format_tau(double tau)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << tau;
    return s.str();
}

GroupScores score_group(std::span<const MatchTable> tables, std::span<const double> thresholds,
                        const GroupFilter& group, Aggregation aggregation)
{
    GroupScores scores;
    for (const auto& t : tables)
        scores.n_gt += static_cast<std::size_t>(
            std::count_if(t.gt.begin(), t.gt.end(), [&](const GtInstance& g) { return group.accepts(g); }));

    if (aggregation == Aggregation::pooled)
    {
        MatchTable pooled;
        for (const auto& t : tables)
            pooled.append(t);
        scores.s_assoc = s_assoc(pooled, group);
        for (double tau : thresholds)
            scores.at.push_back({tau, iou_recall_at(pooled, tau, group)});
        return scores;
    }

    auto mean_of = [&](auto&& score) -> std::optional<double> {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& t : tables)
        {
            if (const std::optional<double> v = score(t))
            {
                sum += *v;
                ++n;
            }
        }
        if (n == 0)
            return std::nullopt;
        return sum / static_cast<double>(n);
    };
    scores.s_assoc = mean_of([&](const MatchTable& t) { return s_assoc(t, group); });
    for (double tau : thresholds)
    {
        const auto i = mean_of([&](const MatchTable& t) -> std::optional<double> {
            const auto v = iou_recall_at(t, tau, group);
            return v ? std::optional<double>(v->iou) : std::nullopt;
        });
        const auto r = mean_of([&](const MatchTable& t) -> std::optional<double> {
            const auto v = iou_recall_at(t, tau, group);
            return v ? std::optional<double>(v->recall) : std::nullopt;
        });
        scores.at.push_back({tau, i ? std::optional<IouRecall>(IouRecall{*i, *r}) : std::nullopt});
    }
    return scores;
}

}  // namespace

void MatchTable::append(const MatchTable& other)
{
    const std::size_t offset = pred_sizes.size();
    pred_sizes.insert(pred_sizes.end(), other.pred_sizes.begin(), other.pred_sizes.end());
    for (GtInstance g : other.gt)
    {
        for (auto& o : g.overlaps)
            o.pred += offset;
        gt.push_back(std::move(g));
    }
}

bool GroupFilter::accepts(const GtInstance& g) const
{
    switch (kind)
    {
    case Kind::all:
        return true;
    case Kind::known:
        return g.known;
    case Kind::unknown:
        return !g.known;
    case Kind::semantic_class:
        return g.semantic == cls;
    }
    return false;
}

MatchTable build_match_table(std::span<const InstanceId> gt_instance, std::span<const SemanticId> gt_semantic,
                             std::span<const InstanceId> pred, const std::set<SemanticId>& known_classes,
                             std::span<const char> eval_mask)
{
    const std::size_t n = gt_instance.size();
    if (gt_semantic.size() != n || pred.size() != n || (!eval_mask.empty() && eval_mask.size() != n))
        throw std::invalid_argument("ground truth, prediction and mask lengths differ");

    MatchTable table;
    std::unordered_map<InstanceId, std::size_t> pred_slot;
    for (std::size_t i = 0; i < n; ++i)
    {
        if (pred[i] == 0)
            continue;
        auto [it, inserted] = pred_slot.try_emplace(pred[i], table.pred_sizes.size());
        if (inserted)
            table.pred_sizes.push_back(0);
        ++table.pred_sizes[it->second];
    }

    std::unordered_map<InstanceId, std::size_t> gt_slot;
    std::vector<std::map<SemanticId, std::size_t>> class_votes;
    std::vector<std::map<std::size_t, std::size_t>> overlaps;
    for (std::size_t i = 0; i < n; ++i)
    {
        if (gt_instance[i] == 0 || (!eval_mask.empty() && !eval_mask[i]))
            continue;
        auto [it, inserted] = gt_slot.try_emplace(gt_instance[i], table.gt.size());
        if (inserted)
        {
            table.gt.push_back(GtInstance{gt_instance[i], 0, false, 0, {}});
            class_votes.emplace_back();
            overlaps.emplace_back();
        }
        const std::size_t g = it->second;
        ++table.gt[g].size;
        ++class_votes[g][gt_semantic[i]];
        if (pred[i] != 0)
            ++overlaps[g][pred_slot.at(pred[i])];
    }

    for (std::size_t g = 0; g < table.gt.size(); ++g)
    {
        auto& inst = table.gt[g];
        const auto majority = std::max_element(class_votes[g].begin(), class_votes[g].end(),
                                               [](const auto& l, const auto& r) { return l.second < r.second; });
        inst.semantic = majority->first;
        inst.known = known_classes.count(inst.semantic) != 0;
        for (const auto& [slot, count] : overlaps[g])
            inst.overlaps.push_back(Overlap{slot, count});
    }
    return table;
}

std::optional<double> s_assoc(const MatchTable& table, const GroupFilter& group)
{
    double total = 0.0;
    std::size_t n_gt = 0;
    for (const auto& g : table.gt)
    {
        if (!group.accepts(g))
            continue;
        ++n_gt;
        double weighted = 0.0;
        for (const auto& o : g.overlaps)
            weighted += static_cast<double>(o.count) * iou(o.count, g.size, table.pred_sizes[o.pred]);
        total += weighted / static_cast<double>(g.size);
    }
    if (n_gt == 0)
        return std::nullopt;
    return total / static_cast<double>(n_gt);
}

std::optional<IouRecall> iou_recall_at(const MatchTable& table, double tau, const GroupFilter& group)
{
    if (!(tau > 0.0 && tau <= 1.0))
        throw std::invalid_argument("IoU threshold must lie in (0, 1], got " + std::to_string(tau));

    double iou_sum = 0.0;
    std::size_t hits = 0;
    std::size_t n_gt = 0;
    for (const auto& g : table.gt)
    {
        if (!group.accepts(g))
            continue;
        ++n_gt;
        const double best = best_iou(table, g);
        if (best >= tau)
        {
            ++hits;
            iou_sum += best;
        }
    }
    if (n_gt == 0)
        return std::nullopt;
    const auto denom = static_cast<double>(n_gt);
    return IouRecall{iou_sum / denom, static_cast<double>(hits) / denom};
}

MetricReport make_report(std::span<const MatchTable> tables, std::span<const double> thresholds,
                         std::span<const SemanticId> classes, Aggregation aggregation)
{
    MetricReport report;
    report.thresholds.assign(thresholds.begin(), thresholds.end());
    for (SemanticId cls : classes)
    {
        const GroupScores s = score_group(tables, {}, GroupFilter::of_class(cls), aggregation);
        report.per_class[cls] = s.s_assoc;
        report.per_class_count[cls] = s.n_gt;
    }
    report.known = score_group(tables, thresholds, GroupFilter::known(), aggregation);
    report.unknown = score_group(tables, thresholds, GroupFilter::unknown(), aggregation);
    report.all = score_group(tables, thresholds, GroupFilter::all(), aggregation);
    return report;
}

std::string class_name(SemanticId id)
{
    static const std::map<SemanticId, std::string> names = {
        {0, "unlabeled"},     {1, "outlier"},      {10, "car"},          {11, "bicycle"},     {13, "bus"},
        {15, "motorcycle"},   {16, "on-rails"},    {18, "truck"},        {20, "other-vehicle"}, {30, "person"},
        {31, "bicyclist"},    {32, "motorcyclist"}, {40, "road"},        {44, "parking"},     {48, "sidewalk"},
        {49, "other-ground"}, {50, "building"},    {51, "fence"},        {52, "other-structure"},
        {60, "lane-marking"}, {70, "vegetation"},  {71, "trunk"},        {72, "terrain"},     {80, "pole"},
        {81, "traffic-sign"}, {99, "other-object"},
    };
    const auto it = names.find(id);
    return it != names.end() ? it->second : "class_" + std::to_string(id);
}

void write_report_text(const MetricReport& report, std::ostream& out)
{
    out << std::left << std::setw(16) << "instances" << std::right << std::setw(7) << "n_gt" << std::setw(9)
        << "S_assoc";
    for (double tau : report.thresholds)
        out << std::setw(10) << ("IoU@" + format_tau(tau)) << std::setw(10) << ("Rec@" + format_tau(tau));
    out << '\n';

    for (const auto& [cls, score] : report.per_class)
    {
        out << std::left << std::setw(16) << class_name(cls) << std::right << std::setw(7)
            << report.per_class_count.at(cls) << std::setw(9) << format_score(score) << '\n';
    }

    auto group_row = [&](const char* name, const GroupScores& s) {
        out << std::left << std::setw(16) << name << std::right << std::setw(7) << s.n_gt << std::setw(9)
            << format_score(s.s_assoc);
        for (const auto& t : s.at)
        {
            out << std::setw(10) << format_score(t.value ? std::optional<double>(t.value->iou) : std::nullopt)
                << std::setw(10) << format_score(t.value ? std::optional<double>(t.value->recall) : std::nullopt);
        }
        out << '\n';
    };
    group_row("known", report.known);
    group_row("unknown", report.unknown);
    group_row("all", report.all);
}

void write_report_kv(const MetricReport& report, std::ostream& out)
{
    auto put = [&](const std::string& key, double v) {
        out << key << '=' << std::fixed << std::setprecision(6) << v << '\n';
    };
    for (const auto& [cls, score] : report.per_class)
    {
        if (score)
            put("s_assoc." + class_name(cls), *score);
    }
    auto group = [&](const std::string& name, const GroupScores& s) {
        if (s.s_assoc)
            put("s_assoc." + name, *s.s_assoc);
        for (const auto& t : s.at)
        {
            if (!t.value)
                continue;
            put("iou@" + format_tau(t.tau) + "." + name, t.value->iou);
            put("recall@" + format_tau(t.tau) + "." + name, t.value->recall);
        }
    };
    group("known", report.known);
    group("unknown", report.unknown);
    group("all", report.all);
}

}  // namespace elc::metrics
