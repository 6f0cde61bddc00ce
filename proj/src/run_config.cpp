#include "elc/run_config.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace elc
{

namespace
{

std::set<SemanticId> id_set(const nlohmann::json& value, const std::string& key)
{
    if (!value.is_array())
        throw UsageError("config key '" + key + "' must be a list of class IDs");
    std::set<SemanticId> ids;
    for (const auto& v : value)
    {
        if (!v.is_number_integer() || v.get<long long>() < 0 ||
            v.get<long long>() > std::numeric_limits<SemanticId>::max())
            throw UsageError("config key '" + key + "' holds an invalid class ID: " + v.dump());
        ids.insert(static_cast<SemanticId>(v.get<long long>()));
    }
    return ids;
}

}  // namespace

PipelineConfig Settings::to_pipeline() const
{
    PipelineConfig cfg;
    try
    {
        cfg.params = EllipsoidParams::from_degrees(rho, theta_deg, phi_deg, d_min);
        cfg.classes = ClassConfig{background_ids, known_thing_ids};
        cfg.diffuse_r = diffuse_r;
        cfg.refine_known = refine;
        cfg.early_termination = early_termination;
        if (min_unknown_points < 1)
            throw std::invalid_argument("min-unknown-points must be at least 1");
        cfg.unknown_min_points = static_cast<std::size_t>(min_unknown_points);
        cfg.algorithm = parse_algorithm(algo);
        cfg.euclidean_radius = euclidean_radius.value_or(rho / 2.0);
        cfg.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw UsageError(e.what());
    }
    return cfg;
}

metrics::Aggregation Settings::to_aggregation() const
{
    if (aggregation == "pooled")
        return metrics::Aggregation::pooled;
    if (aggregation == "per_scan_mean")
        return metrics::Aggregation::per_scan_mean;
    throw UsageError("aggregation must be 'pooled' or 'per_scan_mean', got '" + aggregation + "'");
}

void Settings::check_thresholds() const
{
    if (thresholds.empty())
        throw UsageError("at least one IoU threshold is required");
    for (double t : thresholds)
    {
        if (!(t > 0.0 && t <= 1.0))
            throw UsageError("IoU thresholds must lie in (0, 1], got " + std::to_string(t));
    }
}

void merge_settings_json(Settings& settings, const std::string& json_text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw UsageError("config must be a JSON object");

    for (const auto& [key, value] : doc.items())
    {
        try
        {
            if (key == "rho")
                settings.rho = value.get<double>();
            else if (key == "theta")
                settings.theta_deg = value.get<double>();
            else if (key == "phi")
                settings.phi_deg = value.get<double>();
            else if (key == "d_min")
                settings.d_min = value.get<double>();
            else if (key == "background_ids")
                settings.background_ids = id_set(value, key);
            else if (key == "known_thing_ids")
                settings.known_thing_ids = id_set(value, key);
            else if (key == "diffuse_r")
                settings.diffuse_r = value.get<double>();
            else if (key == "refine")
                settings.refine = value.get<bool>();
            else if (key == "early_termination")
                settings.early_termination = value.get<bool>();
            else if (key == "min_unknown_points")
                settings.min_unknown_points = value.get<long long>();
            else if (key == "algo")
                settings.algo = value.get<std::string>();
            else if (key == "euclidean_radius")
                settings.euclidean_radius = value.get<double>();
            else if (key == "thresholds")
                settings.thresholds = value.get<std::vector<double>>();
            else if (key == "aggregation")
                settings.aggregation = value.get<std::string>();
            else
                throw UsageError("unknown config key '" + key + "'");
        }
        catch (const nlohmann::json::type_error&)
        {
            throw UsageError("config key '" + key + "' has the wrong type: " + value.dump());
        }
    }
}

void merge_settings_file(Settings& settings, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    merge_settings_json(settings, text.str());
}

std::vector<double> parse_thresholds(const std::string& text)
{
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
    {
        try
        {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(item);
        }
        catch (const std::exception&)
        {
            throw UsageError("invalid threshold '" + item + "'");
        }
    }
    return out;
}

}  // namespace elc
