#include "osar/geometry.hpp"
#include "osar/grid.hpp"

#include <cmath>

#include "osar/errors.hpp"
#include "osar/radar_config.hpp"
#include "osar/scene.hpp"

namespace osar {

void PlatformGeometry::validate() const {
    if (!(height_m > 0.0)) throw InvalidParameter("platform height must be positive");
    if (!(speed_mps > 0.0)) throw InvalidParameter("platform speed must be positive");
    if (!(elevation_angle_rad > 0.0 && elevation_angle_rad < kPi / 2))
        throw InvalidParameter("elevation angle must lie in (0, pi/2)");
    if (!(aperture_az_m > 0.0) || !(aperture_el_m > 0.0)) throw InvalidParameter("antenna apertures must be positive");
}

Beamwidths beamwidths(double wavelength_m, const PlatformGeometry& geom) {
    if (!(wavelength_m > 0.0)) throw InvalidParameter("wavelength must be positive");
    if (!(geom.aperture_az_m > 0.0) || !(geom.aperture_el_m > 0.0))
        throw InvalidParameter("antenna apertures must be positive");
    return {0.886 * wavelength_m / geom.aperture_az_m, 0.886 * wavelength_m / geom.aperture_el_m};
}

Coverage ground_coverage(const PlatformGeometry& geom, double theta_az, double theta_el) {
    const double tc = geom.elevation_angle_rad;
    const double near = tc - theta_el / 2;
    const double far = tc + theta_el / 2;
    if (far >= kPi / 2) throw GeometryError("elevation beam reaches the horizon");
    if (near <= 0.0 && theta_el > 0.0 && tc > 0.0) throw GeometryError("elevation beam crosses nadir");
    const double l_az = 2.0 * geom.height_m / std::cos(tc) * std::tan(theta_az / 2);
    const double l_el = geom.height_m * (std::tan(far) - std::tan(near));
    return {l_az, l_el};
}

double closest_range(double x_m, double height_m) { return std::hypot(x_m, height_m); }

double slant_range(const PointTarget& target, double m, const RadarConfig& cfg, RangeMode mode) {
    const double h = cfg.platform.height_m;
    const double along = cfg.platform.speed_mps * m * cfg.azimuth_interval() - target.y_m;
    const double rbar = closest_range(target.x_m, h);
    if (mode == RangeMode::exact) return std::sqrt(target.x_m * target.x_m + h * h + along * along);
    return rbar + along * along / (2.0 * rbar);
}

double envelope_correlation_ratio(const RadarConfig& cfg, const PointTarget& target) {
    const double rbar = closest_range(target.x_m, cfg.platform.height_m);
    const double m = static_cast<double>(cfg.imaging_symbols());
    const double vt = cfg.platform.speed_mps * cfg.azimuth_interval();
    return 2.0 * kPi * m * vt * (std::sqrt(2.0 * cfg.range_pitch() * rbar) + target.y_m) /
           (cfg.wavelength() * rbar);
}

}  // namespace osar
