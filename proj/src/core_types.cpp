#include "elc/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace elc
{

namespace
{
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

bool is_finite(const Point3& p)
{
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

PointCloud PointCloud::select(const std::vector<std::size_t>& indices) const
{
    PointCloud out;
    out.points.reserve(indices.size());
    const bool with_remission = remission.size() == points.size() && !remission.empty();
    if (with_remission)
        out.remission.reserve(indices.size());
    for (std::size_t i : indices)
    {
        out.points.push_back(points.at(i));
        if (with_remission)
            out.remission.push_back(remission[i]);
    }
    return out;
}

EllipsoidParams::EllipsoidParams()
    : EllipsoidParams(kDefaultRho, kDefaultThetaDeg * kDegToRad, kDefaultPhiDeg * kDegToRad, kDefaultMinRange)
{
}

EllipsoidParams::EllipsoidParams(double rho, double theta_rad, double phi_rad, double d_min)
    : rho_(rho), theta_rad_(theta_rad), phi_rad_(phi_rad), d_min_(d_min),
      tan_half_theta_(std::tan(theta_rad / 2.0)), tan_half_phi_(std::tan(phi_rad / 2.0))
{
}

EllipsoidParams EllipsoidParams::from_degrees(double rho, double theta_deg, double phi_deg, double d_min)
{
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("rho must be a positive length, got " + std::to_string(rho));
    if (!(theta_deg > 0.0 && theta_deg < 180.0))
        throw std::invalid_argument("theta must lie in (0, 180) degrees, got " + std::to_string(theta_deg));
    if (!(phi_deg > 0.0 && phi_deg < 180.0))
        throw std::invalid_argument("phi must lie in (0, 180) degrees, got " + std::to_string(phi_deg));
    if (!(d_min > 0.0) || !std::isfinite(d_min))
        throw std::invalid_argument("d_min must be positive, got " + std::to_string(d_min));
    return EllipsoidParams(rho, theta_deg * kDegToRad, phi_deg * kDegToRad, d_min);
}

double EllipsoidParams::theta_deg() const { return theta_rad_ / kDegToRad; }
double EllipsoidParams::phi_deg() const { return phi_rad_ / kDegToRad; }

double EllipsoidAxes::max_axis() const { return std::max({a, b, c}); }
double EllipsoidAxes::min_axis() const { return std::min({a, b, c}); }

EllipsoidAxes ellipsoid_axes(const Point3& p, const EllipsoidParams& params)
{
    EllipsoidAxes axes;
    axes.d = std::hypot(p.x, p.y);
    axes.lambda = std::atan2(p.y, p.x);
    axes.cos_lambda = std::cos(axes.lambda);
    axes.sin_lambda = std::sin(axes.lambda);
    const double range = std::max(axes.d, params.d_min());
    axes.a = params.rho() / 2.0;
    axes.b = params.tan_half_theta() * range;
    axes.c = params.tan_half_phi() * range;
    return axes;
}

EllipsoidAxes fixed_axes(const Point3& p, double a, double b, double c)
{
    EllipsoidAxes axes;
    axes.d = std::hypot(p.x, p.y);
    axes.lambda = std::atan2(p.y, p.x);
    axes.cos_lambda = std::cos(axes.lambda);
    axes.sin_lambda = std::sin(axes.lambda);
    axes.a = a;
    axes.b = b;
    axes.c = c;
    return axes;
}

ClassConfig ClassConfig::semantic_kitti()
{
    ClassConfig cfg;
    cfg.background_ids = {40, 44, 48, 49, 70, 72};
    cfg.known_thing_ids = {10, 11, 15, 18, 20, 30, 31, 32};
    return cfg;
}

void ClassConfig::validate() const
{
    for (SemanticId id : background_ids)
    {
        if (known_thing_ids.count(id) != 0)
            throw std::invalid_argument("semantic class " + std::to_string(id) +
                                        " is listed as both background and known thing");
    }
}

InstanceId InstanceLabeling::max_id() const
{
    return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end());
}

}  // namespace elc
