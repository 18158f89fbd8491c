#pragma once

// Cartesian-product parameter sweeps over scalar config keys.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtripod/config.hpp"

namespace qtripod {

inline constexpr std::size_t kMaxSweepRuns = 10000;

struct SweepAxis {
    std::string key;
    std::vector<std::string> values;  ///< raw tokens, kept for file naming
};

/// Parses "key=v1,v2,...". The key must be scalar.
SweepAxis parse_vary(std::string_view spec);

struct SweepRun {
    std::string name;
    std::vector<std::pair<std::string, std::string>> assignment;
    Engine engine = Engine::ClosedForm;
    double F_min = 0.0;
    double F_max = 0.0;
    double LE_max = 0.0;
    double revival_period = 0.0;  ///< NaN when no recurrence above 0.9 is detected
    double max_abs_dF_vs_first = 0.0;  ///< NaN when the time grid differs from the first run's
};

/// Enumerates the product of `axes` (first axis outermost), writing <name>.csv per run
/// and summary.csv into out_dir. Run names join "<key>=<value>" with '_'.
std::vector<SweepRun> run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                                const std::filesystem::path& out_dir);

}  // namespace qtripod
