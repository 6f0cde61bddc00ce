#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "elc/commands.hpp"

namespace
{

struct Flags
{
    std::string scans, preds, out, gt, config;
    unsigned jobs = 1;
    std::optional<double> rho, theta, phi, radius, diffuse_r;
    std::optional<std::string> algo;
    std::optional<long long> min_unknown_points;
    std::optional<std::string> thresholds;
    std::optional<std::string> aggregation;
    bool no_early_termination = false;
    bool no_refine = false;
};

void add_shared(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--scans", f.scans, "Directory of .bin scans");
    cmd->add_option("--preds", f.preds, "Directory of .label predictions");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--config", f.config, "JSON configuration file");
    cmd->add_option("--jobs", f.jobs, "Scans processed in parallel")->check(CLI::PositiveNumber);
}

void add_clustering(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--rho", f.rho, "Radial axis length, meters");
    cmd->add_option("--theta", f.theta, "Horizontal aperture, degrees");
    cmd->add_option("--phi", f.phi, "Vertical aperture, degrees");
    cmd->add_option("--algo", f.algo, "Clustering algorithm: elc or euclidean");
    cmd->add_option("--radius", f.radius, "Euclidean clustering radius, meters (default rho/2)");
    cmd->add_option("--diffuse-r", f.diffuse_r, "Diffuse search radius for known refinement, meters");
    cmd->add_option("--min-unknown-points", f.min_unknown_points, "Smallest unknown cluster kept");
    cmd->add_flag("--no-early-termination", f.no_early_termination, "Expand interior points too");
    cmd->add_flag("--no-refine", f.no_refine, "Pass known instances through unchanged");
}

elc::cli::RunManifest to_manifest(const Flags& f)
{
    elc::cli::RunManifest m;
    m.scans = f.scans;
    m.preds = f.preds;
    m.out = f.out;
    m.gt = f.gt;
    m.jobs = f.jobs;
    if (!f.config.empty())
        elc::merge_settings_file(m.settings, f.config);

    auto& s = m.settings;
    if (f.rho)
        s.rho = *f.rho;
    if (f.theta)
        s.theta_deg = *f.theta;
    if (f.phi)
        s.phi_deg = *f.phi;
    if (f.algo)
        s.algo = *f.algo;
    if (f.radius)
        s.euclidean_radius = *f.radius;
    if (f.diffuse_r)
        s.diffuse_r = *f.diffuse_r;
    if (f.min_unknown_points)
        s.min_unknown_points = *f.min_unknown_points;
    if (f.no_early_termination)
        s.early_termination = false;
    if (f.no_refine)
        s.refine = false;
    if (f.thresholds)
        s.thresholds = elc::parse_thresholds(*f.thresholds);
    if (f.aggregation)
        s.aggregation = *f.aggregation;
    return m;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Open-world LiDAR instance segmentation with ellipsoidal clustering"};
    app.require_subcommand(1);
    Flags flags;

    auto* segment = app.add_subcommand("segment", "Known refinement plus unknown clustering");
    add_shared(segment, flags);
    add_clustering(segment, flags);

    auto* cluster = app.add_subcommand("cluster", "Class-agnostic clustering of whole scans");
    add_shared(cluster, flags);
    add_clustering(cluster, flags);

    auto* refine = app.add_subcommand("refine", "Refine known instances only");
    add_shared(refine, flags);
    add_clustering(refine, flags);

    auto* eval = app.add_subcommand("eval", "Score predictions against ground truth");
    add_shared(eval, flags);
    eval->add_option("--gt", flags.gt, "Directory of ground-truth .label files");
    eval->add_option("--thresholds", flags.thresholds, "IoU thresholds, comma separated");
    eval->add_option("--aggregation", flags.aggregation, "pooled or per_scan_mean");

    auto* export_ply = app.add_subcommand("export-ply", "Write colored PLY files");
    add_shared(export_ply, flags);

    CLI11_PARSE(app, argc, argv);

    try
    {
        const auto manifest = to_manifest(flags);
        if (segment->parsed())
            return elc::cli::cmd_segment(manifest, std::cerr);
        if (cluster->parsed())
            return elc::cli::cmd_cluster(manifest, std::cerr);
        if (refine->parsed())
            return elc::cli::cmd_refine(manifest, std::cerr);
        if (eval->parsed())
            return elc::cli::cmd_eval(manifest, std::cout);
        return elc::cli::cmd_export_ply(manifest, std::cerr);
    }
    catch (const elc::UsageError& e)
    {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
