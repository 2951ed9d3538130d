#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osar/errors.hpp"
#include "osar/filter_spec.hpp"
#include "osar/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"OFDM synthetic aperture imaging scenario runner"};
    std::string config_path;
    std::string out_dir;
    std::optional<long long> seed;
    std::vector<std::string> filters;
    std::optional<std::string> mode;
    std::vector<double> snr_db;
    std::optional<std::size_t> threads;
    app.add_option("--config", config_path, "scenario JSON")->required()->check(CLI::ExistingFile);
    app.add_option("--out-dir", out_dir, "output directory")->required();
    app.add_option("--seed", seed, "override the master seed");
    app.add_option("--filter", filters, "rf, mf or wf (repeatable)");
    app.add_option("--mode", mode, "data_aided or pilot_only");
    app.add_option("--snr-db", snr_db, "input SNR in dB (repeatable)");
    app.add_option("--threads", threads, "worker threads, 0 for all cores");
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw osar::ConfigError("cannot read '" + config_path + "'");
        std::ostringstream text;
        text << in.rdbuf();
        osar::ScenarioConfig cfg = osar::parse_config(text.str(), false);
        cfg.base_dir = std::filesystem::path(config_path).parent_path().string();
        if (cfg.base_dir.empty()) cfg.base_dir = ".";
        if (seed) {
            if (*seed < 0) throw osar::ConfigPathError("--seed", "must be non-negative");
            cfg.seed = static_cast<std::uint64_t>(*seed);
        }
        if (!filters.empty()) {
            cfg.filters.clear();
            for (const auto& f : filters) {
                try {
                    cfg.filters.push_back(osar::filter_from_name(f));
                } catch (const osar::InvalidParameter& e) {
                    throw osar::ConfigPathError("--filter", e.what());
                }
            }
        }
        if (mode) cfg.mode = *mode;
        if (!snr_db.empty()) cfg.snr_in_db = snr_db;
        if (threads) cfg.threads = *threads;
        osar::validate_config(cfg);
        for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";

        const osar::ScenarioSummary s = osar::run_scenario(cfg, out_dir);
        for (const auto& f : s.files) std::cout << (std::filesystem::path(out_dir) / f).string() << "\n";
    } catch (const osar::ConfigPathError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const osar::ParseError& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
