#include <doctest.h>

#include <cmath>
#include <string>

#include "osar/errors.hpp"
#include "osar/presets.hpp"
#include "osar/scene.hpp"

using namespace osar;

namespace {

std::string p5(std::size_t w, std::size_t h, const std::vector<std::uint8_t>& px) {
    std::string s = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    s.append(px.begin(), px.end());
    return s;
}

}  // namespace

TEST_CASE("reference targets") {
    const Scene s = make_point_scene(presets::reference_targets(), 1000.0);
    REQUIRE(s.size() == 3);
    CHECK(s.closest_ranges[0] == doctest::Approx(1044.0).epsilon(0.5 / 1044.0));
    CHECK(s.closest_ranges[1] == doctest::Approx(1031.0).epsilon(0.5 / 1031.0));
    CHECK(s.closest_ranges[2] == doctest::Approx(1044.0).epsilon(0.5 / 1044.0));
    CHECK(s.total_rcs() == doctest::Approx(3.0));
    for (const auto& t : s.targets) CHECK(s.extent.contains(t.x_m, t.y_m));

    CHECK(make_point_scene({}, 1000.0).size() == 0);
    const PointTarget t = presets::target1();
    CHECK(make_point_scene({t, t}, 1000.0).size() == 2);
}

TEST_CASE("point scene errors") {
    PointTarget bad = presets::target1();
    bad.rcs_var = 0.0;
    CHECK_THROWS_AS(make_point_scene({bad}, 1000.0), InvalidParameter);
    CHECK_THROWS_AS(make_point_scene({presets::target1()}, 1000.0, Extent{0, 10, 0, 10}), InvalidParameter);
    CHECK_THROWS_AS(make_point_scene({presets::target1()}, 0.0), InvalidParameter);
}

TEST_CASE("pgm parsing") {
    const std::string ok = p5(3, 2, {0, 1, 2, 3, 4, 255});
    const PgmImage img = parse_pgm(ok);
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.pixels[5] == 255);

    const PgmImage ascii = parse_pgm("P2\n# comment\n2 2\n255\n0 10\n20 255\n");
    CHECK(ascii.pixels == std::vector<std::uint8_t>{0, 10, 20, 255});
    CHECK(parse_pgm(p5(2, 2, {1, 2, 3, 4})).pixels == std::vector<std::uint8_t>{1, 2, 3, 4});

    auto offset_of = [](const std::string& bytes) -> std::size_t {
        try {
            parse_pgm(bytes);
        } catch (const ParseError& e) {
            return e.offset;
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(offset_of("P6\n1 1\n255\n\0") == 0);
    CHECK(offset_of("P5\n2 2\n65535\n") == 7);
    CHECK(offset_of("P5\n2 2\n255\n\1\2") == 13);  // truncated raster reports the end of input
    CHECK(offset_of("P5\n2") == 4);
    CHECK(offset_of("P2\n1 1\n255\n300\n") == 11);
    CHECK_THROWS_AS(parse_pgm(""), ParseError);
}

TEST_CASE("pgm scene ingestion") {
    const Extent ext{250.0, 350.0, 0.0, 100.0};
    PgmSceneOptions opts{ext, 0, 1.0};
    CHECK(load_scene_pgm(p5(5, 5, std::vector<std::uint8_t>(25, 0)), opts, 1000.0).size() == 0);

    std::vector<std::uint8_t> px(25, 0);
    px[2 * 5 + 2] = 255;
    const Scene one = load_scene_pgm(p5(5, 5, px), opts, 1000.0);
    REQUIRE(one.size() == 1);
    CHECK(one.targets[0].x_m == doctest::Approx(300.0));
    CHECK(one.targets[0].y_m == doctest::Approx(50.0));
    CHECK(one.targets[0].mode == AmplitudeMode::deterministic_unit);
    CHECK(one.targets[0].rcs_var == doctest::Approx(1.0));

    // checkerboard: pixel walk oracle for count and positions
    std::vector<std::uint8_t> cb(16);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) cb[r * 4 + c] = (r + c) % 2 == 0 ? 200 : 20;
    const Extent e4{0.0, 40.0, 100.0, 140.0};
    PgmSceneOptions o4{e4, 128, 2.0};
    const Scene s = load_scene_pgm(p5(4, 4, cb), o4, 1000.0);
    REQUIRE(s.size() == 8);
    std::size_t i = 0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            if ((r + c) % 2) continue;
            CHECK(s.targets[i].x_m == doctest::Approx(10.0 * static_cast<double>(r) + 5.0));
            CHECK(s.targets[i].y_m == doctest::Approx(100.0 + 10.0 * static_cast<double>(c) + 5.0));
            const double amp = 200.0 / 255.0 * 2.0;
            CHECK(s.targets[i].rcs_var == doctest::Approx(amp * amp));
            ++i;
        }
}

TEST_CASE("pixel map round trip") {
    const PixelMap map{pgm_extent(37, 23, 300.0, 80.0, 1.5, 0.9), 37, 23};
    CHECK(map.dx() == doctest::Approx(1.5));
    CHECK(map.dy() == doctest::Approx(0.9));
    for (double r = 0.0; r < 23.0; r += 1.0)
        for (double c = 0.0; c < 37.0; c += 3.0) {
            CHECK(map.row_of(map.ground_x(r)) == doctest::Approx(r).epsilon(1e-12));
            CHECK(map.col_of(map.ground_y(c)) == doctest::Approx(c).epsilon(1e-12));
        }
    CHECK(0.5 * (map.ground_x(0) + map.ground_x(22)) == doctest::Approx(300.0));
}

TEST_CASE("scene json") {
    const nlohmann::json j = nlohmann::json::parse(R"({"targets":[{"x":300,"y":100},{"x":250,"y":100,"rcs_var":2,"mode":"random_gaussian"}]})");
    const Scene s = scene_from_json(j, 1000.0);
    REQUIRE(s.size() == 2);
    CHECK(s.targets[1].mode == AmplitudeMode::random_gaussian);
    CHECK(s.targets[1].rcs_var == 2.0);
    const Scene back = scene_from_json(scene_to_json(s), 1000.0);
    CHECK(back.size() == 2);
    CHECK(back.extent.x_min == s.extent.x_min);

    auto path_of = [](const char* text) -> std::string {
        try {
            scene_from_json(nlohmann::json::parse(text), 1000.0);
        } catch (const ConfigPathError& e) {
            return e.path;
        }
        return "";
    };
    CHECK(path_of(R"({"targets":[{"x":1,"y":2,"z":3}]})") == "$.targets[0].z");
    CHECK(path_of(R"({"targets":[{"x":1}]})") == "$.targets[0].y");
    CHECK(path_of(R"({"targets":[{"x":1,"y":"a"}]})") == "$.targets[0].y");
    CHECK(path_of(R"({"targets":[{"x":1,"y":2,"mode":"speckle"}]})") == "$.targets[0].mode");
    CHECK(path_of(R"({"target":[]})") == "$.target");
}
