#pragma once

namespace osar {

struct PointTarget;
struct RadarConfig;

struct PlatformGeometry {
    double height_m = 1000.0;
    double speed_mps = 50.0;
    double elevation_angle_rad = 0.7853981633974483;
    double aperture_az_m = 0.1;
    double aperture_el_m = 0.1;

    void validate() const;
};

struct Beamwidths {
    double az_rad;
    double el_rad;
};

struct Coverage {
    double az_m;
    double el_m;
};

enum class RangeMode { exact, first_order };

// theta = 0.886 lambda / D per axis
Beamwidths beamwidths(double wavelength_m, const PlatformGeometry& geom);

Coverage ground_coverage(const PlatformGeometry& geom, double theta_az, double theta_el);

double closest_range(double x_m, double height_m);

// Range at imaging symbol m (time m * azimuth interval).
double slant_range(const PointTarget& target, double m, const RadarConfig& cfg, RangeMode mode);

// Envelope correlation time over phase correlation time for the azimuth chirp.
double envelope_correlation_ratio(const RadarConfig& cfg, const PointTarget& target);

}  // namespace osar
