#include "qtripod/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "qtripod/error.hpp"
#include "qtripod/parallel.hpp"
#include "qtripod/presets.hpp"
#include "qtripod/runner.hpp"

namespace qtripod {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string number(double v) { return std::isnan(v) ? std::string("nan") : fmt::format("{:.15g}", v); }

std::string trimmed(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

SweepAxis parse_vary(std::string_view spec) {
    const auto eq = spec.find('=');
    if (eq == std::string_view::npos) {
        throw ValidationError(fmt::format("--vary '{}' must look like key=v1,v2,...", spec));
    }
    SweepAxis axis;
    axis.key = trimmed(spec.substr(0, eq));
    if (!is_scalar_key(axis.key)) {
        throw ValidationError(fmt::format("--vary key '{}' is not a scalar config key", axis.key));
    }
    std::string_view rest = spec.substr(eq + 1);
    while (true) {
        const auto comma = rest.find(',');
        auto token = trimmed(rest.substr(0, comma));
        if (token.empty()) throw ValidationError(fmt::format("--vary '{}' has an empty value", spec));
        axis.values.push_back(std::move(token));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return axis;
}

std::vector<SweepRun> run_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
                                const std::filesystem::path& out_dir) {
    if (axes.empty()) throw ValidationError("sweep needs at least one --vary axis");
    std::size_t total = 1;
    for (const auto& axis : axes) {
        if (axis.values.empty()) throw ValidationError(fmt::format("--vary {} has no values", axis.key));
        total *= axis.values.size();
        if (total > kMaxSweepRuns) {
            throw ValidationError(fmt::format("sweep product exceeds {} runs", kMaxSweepRuns));
        }
    }

    // Enumerate with the first axis outermost; validate every config before any run.
    std::vector<RunConfig> configs(total, base);
    std::vector<SweepRun> runs(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rem = i;
        std::vector<std::size_t> idx(axes.size());
        for (std::size_t a = axes.size(); a-- > 0;) {
            idx[a] = rem % axes[a].values.size();
            rem /= axes[a].values.size();
        }
        std::string name;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const auto& value = axes[a].values[idx[a]];
            set_config_value(configs[i], axes[a].key, value, fmt::format("--vary {}", axes[a].key));
            runs[i].assignment.emplace_back(axes[a].key, value);
            if (!name.empty()) name += '_';
            name += fmt::format("{}={}", axes[a].key, file_token(value));
        }
        configs[i].warnings.clear();
        finalize_config(configs[i]);
        runs[i].name = std::move(name);
    }

    std::filesystem::create_directories(out_dir);
    std::vector<double> first_T, first_F;
    auto execute = [&](std::size_t i) {
        const TimeSeries ts = run_timeseries(configs[i]);
        write_csv(out_dir / (runs[i].name + ".csv"), ts, configs[i]);
        auto& r = runs[i];
        r.engine = ts.meta.engine_used;
        const bool have_F = std::none_of(ts.F_exact.begin(), ts.F_exact.end(), [](double f) { return std::isnan(f); });
        if (have_F) {
            const auto [fmin, fmax] = std::minmax_element(ts.F_exact.begin(), ts.F_exact.end());
            r.F_min = *fmin;
            r.F_max = *fmax;
            r.revival_period = revival_period(ts.T, ts.F_exact);
        } else {
            r.F_min = r.F_max = r.revival_period = kNaN;
        }
        r.LE_max = *std::max_element(ts.LE.begin(), ts.LE.end());
        if (i == 0) {
            first_T = ts.T;
            first_F = ts.F_exact;
            r.max_abs_dF_vs_first = 0.0;
        } else if (have_F && ts.T == first_T) {
            double dmax = 0.0;
            for (std::size_t k = 0; k < ts.T.size(); ++k) dmax = std::max(dmax, std::abs(ts.F_exact[k] - first_F[k]));
            r.max_abs_dF_vs_first = dmax;
        } else {
            r.max_abs_dF_vs_first = kNaN;
        }
    };
    execute(0);
    parallel_for(total - 1, [&](std::size_t i) { execute(i + 1); });

    std::ofstream summary(out_dir / "summary.csv");
    if (!summary) throw NumericalError("cannot write summary.csv");
    summary << "run,file";
    for (const auto& axis : axes) summary << ',' << axis.key;
    summary << ",engine,F_min,F_max,LE_max,revival_period,max_abs_dF_vs_first\n";
    for (std::size_t i = 0; i < total; ++i) {
        const auto& r = runs[i];
        summary << i << ',' << r.name << ".csv";
        for (const auto& [key, value] : r.assignment) summary << ',' << value;
        summary << ',' << to_string(r.engine) << ',' << number(r.F_min) << ',' << number(r.F_max) << ','
                << number(r.LE_max) << ',' << number(r.revival_period) << ',' << number(r.max_abs_dF_vs_first)
                << '\n';
    }
    if (!summary) throw NumericalError("failed writing summary.csv");
    return runs;
}

}  // namespace qtripod
