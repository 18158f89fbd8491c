#include "qtripod/presets.hpp"

#include <fstream>

#include <fmt/format.h>

#include "qtripod/error.hpp"
#include "qtripod/parallel.hpp"
#include "qtripod/runner.hpp"

namespace qtripod {

namespace {

struct Sweep {
    std::string_view key;
    std::array<std::string_view, 3> tokens;
};

constexpr Sweep kModulation{"mu_over_lambda", {"0", "pi/2", "pi"}};
constexpr Sweep kDetuning{"delta_over_lambda", {"2", "4", "6"}};
constexpr Sweep kKerr{"chi_over_lambda", {"0.01", "0.1", "0.8"}};

}  // namespace

std::string file_token(std::string_view raw) {
    std::string out;
    for (char c : raw) {
        if (c == '/') {
            out += "-over-";
        } else if (c == '*') {
            out += 'x';
        } else if (c != ' ') {
            out += c;
        }
    }
    return out;
}

std::vector<std::string> preset_ids() {
    return {"2a", "2b", "2c", "2d", "3a", "3b", "3c", "3d", "3e", "3f", "4a", "4b", "4c", "4d", "4e", "4f"};
}

std::vector<PresetCurve> preset_curves(std::string_view id) {
    const auto ids = preset_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        throw ValidationError(fmt::format("unknown figure id '{}' (expected one of 2a-2d, 3a-3f, 4a-4f)", id));
    }
    const char figure = id[0];
    const char panel = id[1];
    const double tau = figure == '2' ? 0.0007 : figure == '3' ? 0.07 : 0.8;
    const bool left = panel == 'a' || panel == 'c' || panel == 'e';
    const Sweep& sweep = (panel == 'a' || panel == 'b') ? kModulation : (panel == 'c' || panel == 'd') ? kDetuning : kKerr;

    std::vector<PresetCurve> curves;
    for (const auto token : sweep.tokens) {
        RunConfig c;
        c.M = 30;
        c.q = 0.9;
        c.tau = tau;
        c.t_max = 50.0;
        c.samples = 5001;
        c.theta = left ? std::array<cplx, 4>{cplx{1.0}, cplx{}, cplx{}, cplx{}}
                       : std::array<cplx, 4>{cplx{0.5}, cplx{0.5}, cplx{0.5}, cplx{0.5}};
        set_config_value(c, sweep.key, token, fmt::format("preset {}", id));
        finalize_config(c);
        curves.push_back({fmt::format("fig{}_{}={}", id, sweep.key, file_token(token)), std::move(c)});
    }
    return curves;
}

std::vector<std::filesystem::path> run_preset(std::string_view id, const std::filesystem::path& out_dir) {
    const auto curves = preset_curves(id);
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> paths(curves.size());
    parallel_for(curves.size(), [&](std::size_t i) {
        const auto& curve = curves[i];
        {
            std::ofstream cfg(out_dir / (curve.name + ".cfg"));
            if (!cfg) throw NumericalError(fmt::format("cannot write preset config for {}", curve.name));
            cfg << to_config_text(curve.config);
        }
        paths[i] = out_dir / (curve.name + ".csv");
        write_csv(paths[i], run_timeseries(curve.config), curve.config);
    });
    return paths;
}

}  // namespace qtripod
