#pragma once

// Figure presets: q = 0.9, M = 30, one curve per listed parameter value.
//   fig 2: tau = 0.0007; fig 3: tau = 0.07; fig 4: tau = 0.8
//   panels a/b: mu/lambda in {0, pi/2, pi}; c/d: Delta/lambda in {2, 4, 6};
//   e/f (figs 3, 4): chi/lambda in {0.01, 0.1, 0.8}
//   left panels (a, c, e): theta = (1, 0, 0, 0); right panels: theta_i = 0.5
// Figure grids default to t_max = 50, 5001 samples.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qtripod/config.hpp"

namespace qtripod {

struct PresetCurve {
    std::string name;  ///< file stem, e.g. "fig2a_mu_over_lambda=pi-over-2"
    RunConfig config;
};

std::vector<std::string> preset_ids();

/// Throws ValidationError for an unknown id.
std::vector<PresetCurve> preset_curves(std::string_view figure_id);

/// Writes <name>.cfg and <name>.csv for every curve; returns the CSV paths in curve order.
std::vector<std::filesystem::path> run_preset(std::string_view figure_id, const std::filesystem::path& out_dir);

/// Makes a raw value token safe for file names ("pi/2" -> "pi-over-2").
std::string file_token(std::string_view raw);

}  // namespace qtripod
