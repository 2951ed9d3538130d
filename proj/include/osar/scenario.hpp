#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osar/constellation.hpp"
#include "osar/ensemble.hpp"
#include "osar/rd_imaging.hpp"
#include "osar/scene.hpp"
#include "osar/symbol_grid.hpp"

namespace osar {

struct PgmSceneSource {
    std::string path;
    std::optional<Extent> extent;
    double center_x_m = 0.0;
    double center_y_m = 0.0;
    int threshold = 0;
    double rcs_scale = 1.0;
};

struct OutputOptions {
    std::vector<Stage> images{Stage::rc, Stage::rd, Stage::rcmc, Stage::ac};
    bool profiles = true;
    double db_floor = -40.0;
    bool echo_dump = false;
};

struct ScenarioConfig {
    RadarConfig radar;
    std::optional<nlohmann::json> inline_scene;
    std::optional<PgmSceneSource> pgm_scene;
    std::string constellation = "qam256";
    std::vector<FilterKind> filters{FilterKind::mf};
    std::string mode = "data_aided";
    std::optional<SrsConfig> srs;
    std::vector<double> snr_in_db{5.0};
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    RcmcMethod rcmc{};
    KaMode ka_mode = KaMode::reference;
    std::optional<double> reference_range_m;
    GainReference gain = GainReference::expected_chi;
    OutputOptions outputs;
    std::size_t threads = 0;

    std::string base_dir = ".";  // relative PGM paths resolve here
    std::vector<std::string> warnings;
};

// Strict JSON: unknown keys rejected, errors name the JSON path. Pass
// validate = false to apply overrides before validate_config.
ScenarioConfig parse_config(const std::string& text, bool validate = true);

// Check mode / srs / sweep consistency; throws ConfigPathError.
void validate_config(ScenarioConfig& cfg);

Scene build_scene(const ScenarioConfig& cfg);

struct ScenarioSummary {
    std::vector<MetricsReport> reports;
    std::vector<std::string> files;
};

ScenarioSummary run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

}  // namespace osar
