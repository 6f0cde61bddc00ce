#include "elc/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <thread>

#include "elc/io_kitti.hpp"
#include "elc/metrics.hpp"
#include "elc/pipeline.hpp"

namespace elc::cli
{

namespace fs = std::filesystem;

namespace
{

void require_dir(const fs::path& dir, const char* flag)
{
    if (dir.empty())
        throw UsageError(std::string(flag) + " is required");
    if (!fs::is_directory(dir))
        throw UsageError(std::string(flag) + " " + dir.string() + " is not a directory");
}

void prepare_out_dir(const fs::path& dir)
{
    if (dir.empty())
        throw UsageError("--out is required");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir))
        throw UsageError("cannot create output directory " + dir.string());
}

// Runs `task` over every item with up to `jobs` workers. Returns one error
// message per item (empty on success), in item order.
std::vector<std::string> run_parallel(std::size_t count, unsigned jobs,
                                      const std::function<void(std::size_t)>& task)
{
    std::vector<std::string> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
        {
            try
            {
                task(i);
            }
            catch (const std::exception& e)
            {
                errors[i] = e.what();
                if (errors[i].empty())
                    errors[i] = "unknown error";
            }
        }
    };

    const unsigned n_workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n_workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    return errors;
}

int report_failures(const std::vector<std::string>& stems, const std::vector<std::string>& errors, const char* verb,
                    std::chrono::steady_clock::time_point start, std::ostream& log)
{
    std::size_t failed = 0;
    for (std::size_t i = 0; i < stems.size(); ++i)
    {
        if (!errors[i].empty())
        {
            ++failed;
            log << "error: " << stems[i] << ": " << errors[i] << '\n';
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (stems.empty())
        log << "warning: no scans found\n";
    log << verb << ' ' << (stems.size() - failed) << '/' << stems.size() << " scans in " << std::fixed
        << std::setprecision(2) << seconds << " s\n";
    return failed == 0 ? 0 : 1;
}

// Runs the pipeline on every scan with `cfg`. When `preds` is empty the scan is
// treated as fully unlabeled.
int run_over_scans(const RunManifest& manifest, const PipelineConfig& cfg, bool needs_preds, const char* verb,
                   std::ostream& log)
{
    const auto start = std::chrono::steady_clock::now();
    const auto stems = list_stems(manifest.scans, ".bin");

    const auto errors = run_parallel(stems.size(), manifest.jobs, [&](std::size_t i) {
        const fs::path scan_path = manifest.scans / (stems[i] + ".bin");
        io::ScanBundle bundle;
        if (needs_preds || !manifest.preds.empty())
        {
            const fs::path pred_path = manifest.preds / (stems[i] + ".label");
            if (!fs::exists(pred_path))
                throw std::runtime_error("missing prediction " + pred_path.string());
            bundle = io::read_bundle(scan_path, pred_path);
        }
        else
        {
            bundle.cloud = io::read_scan(scan_path);
            bundle.semantic.assign(bundle.cloud.size(), 0);
            bundle.instance.assign(bundle.cloud.size(), 0);
        }
        const OisResult result = run_pipeline(bundle, cfg);
        io::write_labels(result.to_records(), manifest.out / (stems[i] + ".label"));
    });
    return report_failures(stems, errors, verb, start, log);
}

}  // namespace

std::vector<std::string> list_stems(const fs::path& dir, const std::string& extension)
{
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(dir))
    {
        if (entry.is_regular_file() && entry.path().extension() == extension)
            stems.push_back(entry.path().stem().string());
    }
    std::sort(stems.begin(), stems.end());
    return stems;
}

int cmd_segment(const RunManifest& manifest, std::ostream& log)
{
    const PipelineConfig cfg = manifest.settings.to_pipeline();
    require_dir(manifest.scans, "--scans");
    require_dir(manifest.preds, "--preds");
    prepare_out_dir(manifest.out);
    return run_over_scans(manifest, cfg, true, "segmented", log);
}

int cmd_cluster(const RunManifest& manifest, std::ostream& log)
{
    PipelineConfig cfg = manifest.settings.to_pipeline();
    require_dir(manifest.scans, "--scans");
    if (!manifest.preds.empty())
        require_dir(manifest.preds, "--preds");
    prepare_out_dir(manifest.out);

    // Nothing is treated as a known instance; with predictions the background
    // classes are still removed first.
    cfg.classes.known_thing_ids.clear();
    if (manifest.preds.empty())
        cfg.classes.background_ids.clear();
    cfg.refine_known = false;
    return run_over_scans(manifest, cfg, false, "clustered", log);
}

int cmd_refine(const RunManifest& manifest, std::ostream& log)
{
    PipelineConfig cfg = manifest.settings.to_pipeline();
    require_dir(manifest.scans, "--scans");
    require_dir(manifest.preds, "--preds");
    prepare_out_dir(manifest.out);
    cfg.refine_known = true;
    cfg.cluster_unknown = false;
    return run_over_scans(manifest, cfg, true, "refined", log);
}

int cmd_eval(const RunManifest& manifest, std::ostream& log)
{
    manifest.settings.check_thresholds();
    const auto aggregation = manifest.settings.to_aggregation();
    require_dir(manifest.preds, "--preds");
    require_dir(manifest.gt, "--gt");
    if (!manifest.out.empty())
        prepare_out_dir(manifest.out);

    const auto pred_stems = list_stems(manifest.preds, ".label");
    const auto gt_stems = list_stems(manifest.gt, ".label");
    std::vector<std::string> unpaired;
    std::set_symmetric_difference(pred_stems.begin(), pred_stems.end(), gt_stems.begin(), gt_stems.end(),
                                  std::back_inserter(unpaired));
    if (!unpaired.empty())
    {
        log << "error: unpaired label files:";
        for (const auto& s : unpaired)
            log << ' ' << s;
        log << '\n';
        return 1;
    }

    const auto start = std::chrono::steady_clock::now();
    std::vector<metrics::MatchTable> tables(gt_stems.size());
    const auto& known = manifest.settings.known_thing_ids;
    const auto errors = run_parallel(gt_stems.size(), manifest.jobs, [&](std::size_t i) {
        const auto gt = io::read_labels(manifest.gt / (gt_stems[i] + ".label"));
        const auto pred = io::read_labels(manifest.preds / (gt_stems[i] + ".label"), gt.size());
        std::vector<InstanceId> gt_instance(gt.size()), pred_instance(gt.size());
        std::vector<SemanticId> gt_semantic(gt.size());
        for (std::size_t k = 0; k < gt.size(); ++k)
        {
            gt_instance[k] = gt[k].instance;
            gt_semantic[k] = gt[k].semantic;
            pred_instance[k] = pred[k].instance;
        }
        tables[i] = metrics::build_match_table(gt_instance, gt_semantic, pred_instance, known);
    });
    if (report_failures(gt_stems, errors, "evaluated", start, log) != 0)
        return 1;

    const std::vector<SemanticId> classes(known.begin(), known.end());
    const auto report = metrics::make_report(tables, manifest.settings.thresholds, classes, aggregation);
    metrics::write_report_text(report, log);

    if (!manifest.out.empty())
    {
        std::ofstream text(manifest.out / "report.txt");
        metrics::write_report_text(report, text);
        std::ofstream kv(manifest.out / "report.kv");
        metrics::write_report_kv(report, kv);
        if (!text || !kv)
        {
            log << "error: failed writing report to " << manifest.out.string() << '\n';
            return 1;
        }
    }
    return 0;
}

int cmd_export_ply(const RunManifest& manifest, std::ostream& log)
{
    require_dir(manifest.scans, "--scans");
    require_dir(manifest.preds, "--preds");
    prepare_out_dir(manifest.out);

    const auto start = std::chrono::steady_clock::now();
    const auto stems = list_stems(manifest.scans, ".bin");
    const auto errors = run_parallel(stems.size(), manifest.jobs, [&](std::size_t i) {
        const fs::path label_path = manifest.preds / (stems[i] + ".label");
        if (!fs::exists(label_path))
            throw std::runtime_error("missing labels " + label_path.string());
        const io::ScanBundle bundle = io::read_bundle(manifest.scans / (stems[i] + ".bin"), label_path);
        io::export_ply(bundle.cloud, InstanceLabeling{bundle.instance}, manifest.out / (stems[i] + ".ply"));
    });
    return report_failures(stems, errors, "exported", start, log);
}

}  // namespace elc::cli
