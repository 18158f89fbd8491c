// qtripod: batch front end for the tripod-atom simulator.
//
//   qtripod simulate --config FILE [--set key=value]...
//   qtripod preset --figure ID --out DIR
//   qtripod sweep --config FILE --vary key=v1,v2,... [--vary ...] --out DIR
//
// Exit codes: 0 success, 1 validation error, 2 runtime/numerical error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qtripod/config.hpp"
#include "qtripod/error.hpp"
#include "qtripod/presets.hpp"
#include "qtripod/runner.hpp"
#include "qtripod/sweep.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qtripod::ValidationError(fmt::format("cannot read config file '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_warnings(const qtripod::RunConfig& config) {
    for (const auto& w : config.warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Four-level tripod atom in a q-deformed binomial field: fidelity and linear entropy"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    auto* simulate = app.add_subcommand("simulate", "Run one time series and write CSV");
    simulate->add_option("--config", config_path, "Config file (key = value lines)")->required();
    simulate->add_option("--set", overrides, "Override a config key (key=value), repeatable");

    std::string figure;
    std::string out_dir;
    auto* preset = app.add_subcommand("preset", "Emit the CSVs for one figure panel");
    preset->add_option("--figure", figure, "Figure id: 2a-2d, 3a-3f, 4a-4f")->required();
    preset->add_option("--out", out_dir, "Output directory")->required();

    std::vector<std::string> vary;
    auto* sweep = app.add_subcommand("sweep", "Cartesian-product parameter sweep");
    sweep->add_option("--config", config_path, "Base config file")->required();
    sweep->add_option("--vary", vary, "key=v1,v2,... (repeatable)")->required();
    sweep->add_option("--out", out_dir, "Output directory")->required();
    sweep->add_option("--set", overrides, "Override a base config key (key=value), repeatable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*simulate) {
            const auto config = qtripod::load_config(read_file(config_path), overrides);
            print_warnings(config);
            const auto series = qtripod::run_timeseries(config);
            if (config.output.empty() || config.output == "-") {
                qtripod::write_csv(std::cout, series, config);
            } else {
                qtripod::write_csv(std::filesystem::path(config.output), series, config);
            }
        } else if (*preset) {
            for (const auto& path : qtripod::run_preset(figure, out_dir)) std::cout << path.string() << '\n';
        } else if (*sweep) {
            const auto base = qtripod::load_config(read_file(config_path), overrides);
            print_warnings(base);
            std::vector<qtripod::SweepAxis> axes;
            for (const auto& v : vary) axes.push_back(qtripod::parse_vary(v));
            const auto runs = qtripod::run_sweep(base, axes, out_dir);
            std::cout << fmt::format("{} runs written to {}\n", runs.size(), out_dir);
        }
    } catch (const qtripod::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
