#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace osar {

enum class AmplitudeMode { random_gaussian, deterministic_unit };

struct PointTarget {
    double x_m = 0.0;
    double y_m = 0.0;
    double rcs_var = 1.0;
    AmplitudeMode mode = AmplitudeMode::deterministic_unit;
};

struct Extent {
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;

    bool contains(double x, double y) const { return x >= x_min && x <= x_max && y >= y_min && y <= y_max; }
};

struct Scene {
    std::vector<PointTarget> targets;
    std::vector<double> closest_ranges;  // Rbar_q
    Extent extent;
    double height_m = 0.0;

    std::size_t size() const { return targets.size(); }
    double total_rcs() const;
};

// Extent defaults to the targets' bounding box grown by 1 m.
Scene make_point_scene(const std::vector<PointTarget>& specs, double height_m,
                       std::optional<Extent> extent = std::nullopt);

struct PgmImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;  // row-major
};

PgmImage parse_pgm(std::string_view bytes);

// Affine map between pixel centers and ground: columns run along azimuth (y),
// rows along ground range (x), row 0 at x_min.
struct PixelMap {
    Extent extent;
    std::size_t width = 0;
    std::size_t height = 0;

    double dx() const { return (extent.x_max - extent.x_min) / static_cast<double>(height); }
    double dy() const { return (extent.y_max - extent.y_min) / static_cast<double>(width); }
    double ground_x(double row) const { return extent.x_min + (row + 0.5) * dx(); }
    double ground_y(double col) const { return extent.y_min + (col + 0.5) * dy(); }
    double row_of(double x) const { return (x - extent.x_min) / dx() - 0.5; }
    double col_of(double y) const { return (y - extent.y_min) / dy() - 0.5; }
};

// Extent centred on (cx, cy) with one pixel per (pitch_x, pitch_y) cell.
Extent pgm_extent(std::size_t width, std::size_t height, double cx, double cy, double pitch_x, double pitch_y);

struct PgmSceneOptions {
    Extent extent;
    int threshold = 0;
    double rcs_scale = 1.0;
};

Scene load_scene_pgm(std::string_view bytes, const PgmSceneOptions& opts, double height_m);

// {"targets": [{"x", "y", "rcs_var", "mode"}], "extent": {...}}; unknown keys rejected.
Scene scene_from_json(const nlohmann::json& j, double height_m, const std::string& path = "$");

nlohmann::json scene_to_json(const Scene& s);

}  // namespace osar
