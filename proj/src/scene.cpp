#include "osar/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "json_util.hpp"
#include "osar/errors.hpp"
#include "osar/geometry.hpp"

namespace osar {

double Scene::total_rcs() const {
    double s = 0.0;
    for (const auto& t : targets) s += t.rcs_var;
    return s;
}

Scene make_point_scene(const std::vector<PointTarget>& specs, double height_m, std::optional<Extent> extent) {
    if (!(height_m > 0.0)) throw InvalidParameter("platform height must be positive");
    Scene s;
    s.height_m = height_m;
    if (extent) {
        s.extent = *extent;
    } else if (!specs.empty()) {
        Extent e{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
                 std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
        for (const auto& t : specs) {
            e.x_min = std::min(e.x_min, t.x_m - 1.0);
            e.x_max = std::max(e.x_max, t.x_m + 1.0);
            e.y_min = std::min(e.y_min, t.y_m - 1.0);
            e.y_max = std::max(e.y_max, t.y_m + 1.0);
        }
        s.extent = e;
    }
    for (std::size_t q = 0; q < specs.size(); ++q) {
        const auto& t = specs[q];
        if (!(t.rcs_var > 0.0)) throw InvalidParameter("target " + std::to_string(q) + ": rcs_var must be positive");
        if (!s.extent.contains(t.x_m, t.y_m))
            throw InvalidParameter("target " + std::to_string(q) + " lies outside the scene extent");
        s.targets.push_back(t);
        s.closest_ranges.push_back(closest_range(t.x_m, height_m));
    }
    return s;
}

namespace {

class PgmReader {
public:
    explicit PgmReader(std::string_view b) : b_(b) {}

    void skip_space_and_comments() {
        while (pos_ < b_.size()) {
            const char c = b_[pos_];
            if (c == '#') {
                while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::size_t read_uint(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        token_start_ = start;
        if (pos_ >= b_.size()) throw ParseError(pos_, std::string("truncated header, expected ") + what);
        if (!std::isdigit(static_cast<unsigned char>(b_[pos_])))
            throw ParseError(pos_, std::string("expected ") + what);
        std::size_t v = 0;
        while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
            v = v * 10 + static_cast<std::size_t>(b_[pos_] - '0');
            if (v > 1u << 30) throw ParseError(start, std::string(what) + " out of range");
            ++pos_;
        }
        return v;
    }

    std::size_t pos_ = 0;
    std::size_t token_start_ = 0;  // offset of the last number read
    std::string_view b_;
};

}  // namespace

PgmImage parse_pgm(std::string_view bytes) {
    if (bytes.size() < 2) throw ParseError(0, "truncated header, expected magic");
    if (bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) throw ParseError(0, "bad magic, expected P2 or P5");
    const bool binary = bytes[1] == '5';
    PgmReader r(bytes);
    r.pos_ = 2;
    if (r.pos_ < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[r.pos_])) && bytes[r.pos_] != '#')
        throw ParseError(r.pos_, "expected whitespace after magic");
    PgmImage img;
    img.width = r.read_uint("width");
    img.height = r.read_uint("height");
    const std::size_t maxval = r.read_uint("maxval");
    const std::size_t maxval_at = r.token_start_;
    if (img.width == 0 || img.height == 0) throw ParseError(maxval_at, "zero image dimension");
    if (maxval != 255) throw ParseError(maxval_at, "maxval must be 255");
    const std::size_t count = img.width * img.height;
    img.pixels.resize(count);
    if (binary) {
        if (r.pos_ >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[r.pos_])))
            throw ParseError(r.pos_, "expected single whitespace before raster");
        ++r.pos_;
        if (bytes.size() - r.pos_ < count)
            throw ParseError(bytes.size(), "truncated raster: need " + std::to_string(count) + " bytes, have " +
                                               std::to_string(bytes.size() - r.pos_));
        std::copy_n(reinterpret_cast<const std::uint8_t*>(bytes.data() + r.pos_), count, img.pixels.begin());
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t v = r.read_uint("pixel value");
            if (v > 255) throw ParseError(r.token_start_, "pixel value exceeds maxval");
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

Extent pgm_extent(std::size_t width, std::size_t height, double cx, double cy, double pitch_x, double pitch_y) {
    const double hx = 0.5 * static_cast<double>(height) * pitch_x;
    const double hy = 0.5 * static_cast<double>(width) * pitch_y;
    return {cx - hx, cx + hx, cy - hy, cy + hy};
}

Scene load_scene_pgm(std::string_view bytes, const PgmSceneOptions& opts, double height_m) {
    const PgmImage img = parse_pgm(bytes);
    if (opts.threshold < 0 || opts.threshold > 255) throw InvalidParameter("threshold must lie in [0, 255]");
    if (!(opts.extent.x_max > opts.extent.x_min) || !(opts.extent.y_max > opts.extent.y_min))
        throw InvalidParameter("degenerate scene extent");
    const PixelMap map{opts.extent, img.width, img.height};
    std::vector<PointTarget> specs;
    for (std::size_t row = 0; row < img.height; ++row) {
        for (std::size_t col = 0; col < img.width; ++col) {
            const int p = img.pixels[row * img.width + col];
            if (p <= opts.threshold) continue;
            const double amp = p / 255.0 * opts.rcs_scale;
            specs.push_back({map.ground_x(static_cast<double>(row)), map.ground_y(static_cast<double>(col)),
                             amp * amp, AmplitudeMode::deterministic_unit});
        }
    }
    return make_point_scene(specs, height_m, opts.extent);
}

Scene scene_from_json(const nlohmann::json& j, double height_m, const std::string& path) {
    using namespace jsonu;
    require_object(j, path);
    reject_unknown(j, path, {"targets", "extent"});
    std::vector<PointTarget> specs;
    const json& tj = require(j, path, "targets");
    const std::string tpath = child(path, "targets");
    if (!tj.is_array()) throw ConfigPathError(tpath, "expected an array");
    for (std::size_t i = 0; i < tj.size(); ++i) {
        const std::string p = index(tpath, i);
        const json& t = tj[i];
        require_object(t, p);
        reject_unknown(t, p, {"x", "y", "rcs_var", "mode"});
        PointTarget pt;
        pt.x_m = number(require(t, p, "x"), child(p, "x"));
        pt.y_m = number(require(t, p, "y"), child(p, "y"));
        if (t.contains("rcs_var")) pt.rcs_var = positive(t["rcs_var"], child(p, "rcs_var"));
        if (t.contains("mode")) {
            const std::string m = string(t["mode"], child(p, "mode"));
            if (m == "random_gaussian") pt.mode = AmplitudeMode::random_gaussian;
            else if (m == "deterministic_unit") pt.mode = AmplitudeMode::deterministic_unit;
            else throw ConfigPathError(child(p, "mode"), "expected \"random_gaussian\" or \"deterministic_unit\"");
        }
        specs.push_back(pt);
    }
    std::optional<Extent> extent;
    if (j.contains("extent")) {
        const std::string p = child(path, "extent");
        const json& e = j["extent"];
        require_object(e, p);
        reject_unknown(e, p, {"x_min", "x_max", "y_min", "y_max"});
        extent = Extent{number(require(e, p, "x_min"), child(p, "x_min")), number(require(e, p, "x_max"), child(p, "x_max")),
                        number(require(e, p, "y_min"), child(p, "y_min")), number(require(e, p, "y_max"), child(p, "y_max"))};
        if (!(extent->x_max > extent->x_min) || !(extent->y_max > extent->y_min))
            throw ConfigPathError(p, "extent must have positive width and height");
    }
    try {
        return make_point_scene(specs, height_m, extent);
    } catch (const InvalidParameter& e) {
        throw ConfigPathError(tpath, e.what());
    }
}

nlohmann::json scene_to_json(const Scene& s) {
    nlohmann::json targets = nlohmann::json::array();
    for (const auto& t : s.targets)
        targets.push_back({{"x", t.x_m},
                           {"y", t.y_m},
                           {"rcs_var", t.rcs_var},
                           {"mode", t.mode == AmplitudeMode::random_gaussian ? "random_gaussian" : "deterministic_unit"}});
    return {{"targets", targets},
            {"extent", {{"x_min", s.extent.x_min}, {"x_max", s.extent.x_max}, {"y_min", s.extent.y_min}, {"y_max", s.extent.y_max}}}};
}

}  // namespace osar
