#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "elc/run_config.hpp"

namespace elc::cli
{

struct RunManifest
{
    std::filesystem::path scans;
    std::filesystem::path preds;
    std::filesystem::path out;
    std::filesystem::path gt;
    unsigned jobs = 1;
    Settings settings;
};

/// Stems of files with `extension` in `dir`, sorted.
std::vector<std::string> list_stems(const std::filesystem::path& dir, const std::string& extension);

// Each command validates its settings and directories first and throws
// UsageError before reading any data. The return value is the process exit
// status: 0 iff every scan was processed and written.

/// Full open-world segmentation of paired scan / prediction files.
int cmd_segment(const RunManifest& manifest, std::ostream& log);
/// Class-agnostic clustering of whole scans; predictions, if given, only remove background.
int cmd_cluster(const RunManifest& manifest, std::ostream& log);
/// Known-instance refinement only; everything else gets instance 0.
int cmd_refine(const RunManifest& manifest, std::ostream& log);
/// Scores predictions against ground truth; writes report.txt and report.kv to `out` when set.
int cmd_eval(const RunManifest& manifest, std::ostream& log);
/// One colored PLY per scan, using the labels in `preds`.
int cmd_export_ply(const RunManifest& manifest, std::ostream& log);

}  // namespace elc::cli
