#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

namespace elc
{

/// Point in the sensor frame, meters. The LiDAR optical center is the origin.
struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3&, const Point3&) = default;
};

bool is_finite(const Point3& p);

struct PointCloud
{
    std::vector<Point3> points;
    /// Either empty or parallel to `points`.
    std::vector<float> remission;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    /// Sub-cloud made of the given indices, in the given order.
    PointCloud select(const std::vector<std::size_t>& indices) const;
};

/// Scales of the range-adaptive ellipsoidal neighborhood.
///
/// rho is the full length of the radial axis. theta and phi are the horizontal
/// and vertical angular apertures; they are given in degrees and stored in
/// radians. d_min floors the planar range so the lateral axes never vanish for
/// points right above or below the sensor.
class EllipsoidParams
{
  public:
    static constexpr double kDefaultRho = 2.0;
    static constexpr double kDefaultThetaDeg = 2.0;
    static constexpr double kDefaultPhiDeg = 7.5;
    static constexpr double kDefaultMinRange = 0.001;

    EllipsoidParams();

    /// Throws std::invalid_argument unless rho > 0, 0 < theta, phi < 180 and d_min > 0.
    static EllipsoidParams from_degrees(double rho, double theta_deg, double phi_deg,
                                        double d_min = kDefaultMinRange);

    double rho() const { return rho_; }
    double theta() const { return theta_rad_; }
    double phi() const { return phi_rad_; }
    double theta_deg() const;
    double phi_deg() const;
    double d_min() const { return d_min_; }

    double tan_half_theta() const { return tan_half_theta_; }
    double tan_half_phi() const { return tan_half_phi_; }

  private:
    EllipsoidParams(double rho, double theta_rad, double phi_rad, double d_min);

    double rho_;
    double theta_rad_;
    double phi_rad_;
    double d_min_;
    double tan_half_theta_;
    double tan_half_phi_;
};

/// Semi-axes of the ellipsoid centered on a query point. `a` lies along the
/// ray from the sensor in the XY plane, `b` is horizontal and perpendicular to
/// it, `c` is vertical.
struct EllipsoidAxes
{
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double lambda = 0.0;  ///< azimuth of the query point, radians
    double d = 0.0;       ///< planar range of the query point, meters

    double cos_lambda = 1.0;
    double sin_lambda = 0.0;

    double max_axis() const;
    double min_axis() const;
};

EllipsoidAxes ellipsoid_axes(const Point3& p, const EllipsoidParams& params);

/// Axes with fixed lengths, oriented along the azimuth of `p`.
EllipsoidAxes fixed_axes(const Point3& p, double a, double b, double c);

using SemanticId = std::uint16_t;
using InstanceId = std::uint32_t;

struct ClassConfig
{
    std::set<SemanticId> background_ids;
    std::set<SemanticId> known_thing_ids;

    /// road, parking, sidewalk, other-ground, vegetation, terrain / car, bicycle,
    /// motorcycle, truck, other-vehicle, person, bicyclist, motorcyclist.
    static ClassConfig semantic_kitti();

    bool is_background(SemanticId id) const { return background_ids.count(id) != 0; }
    bool is_known_thing(SemanticId id) const { return known_thing_ids.count(id) != 0; }

    /// Throws std::invalid_argument if the two sets overlap.
    void validate() const;
};

/// Per-point instance IDs. 0 means unassigned or background.
struct InstanceLabeling
{
    std::vector<InstanceId> ids;

    std::size_t size() const { return ids.size(); }
    InstanceId max_id() const;

    friend bool operator==(const InstanceLabeling&, const InstanceLabeling&) = default;
};

}  // namespace elc
