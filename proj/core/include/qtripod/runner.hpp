#pragma once

// Time-series runs, CSV emission and simple fidelity-curve analysis.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qtripod/config.hpp"

namespace qtripod {

inline constexpr std::string_view kCsvHeader = "T,F_exact,F_paper,LE,p1,p2,p3,p4,norm_err";

struct RunMetadata {
    Engine engine_used = Engine::ClosedForm;
    std::string engine_reason;
    double pmf_deviation = 0.0;  ///< sum_n b(n) - 1 before normalisation
    bool pmf_renormalized = false;
    int confluent_blocks = 0;
    /// ODE-only diagnostics.
    double ode_step = 0.0;
    double ode_norm_drift = 0.0;
    std::string ode_diagnostic;
    std::vector<std::string> notes;
};

struct TimeSeries {
    std::vector<double> T;
    std::vector<double> F_exact;  ///< NaN when not requested
    std::vector<double> F_paper;  ///< NaN when not requested or unavailable for the engine
    std::vector<double> LE;
    std::vector<std::array<double, 4>> populations;
    std::vector<double> norm_err;
    RunMetadata meta;
};

/// Evaluates the run on the config's uniform grid. Engine::Auto uses the closed form
/// when its premises hold and the RK4 integrator otherwise.
TimeSeries run_timeseries(const RunConfig& config);

/// `#`-prefixed metadata preamble, the header line, then one row per sample.
void write_csv(std::ostream& os, const TimeSeries& series, const RunConfig& config);
void write_csv(const std::filesystem::path& path, const TimeSeries& series, const RunConfig& config);

/// Strict local maxima of `values` above `threshold`, located by 3-point parabolic refinement.
std::vector<double> refined_maxima(std::span<const double> T, std::span<const double> values, double threshold);

/// Median spacing of successive maxima of F above 0.9; NaN when fewer than two.
double revival_period(std::span<const double> T, std::span<const double> F, double threshold = 0.9);

/// Mean over the final `fraction` of the samples.
double tail_mean(std::span<const double> values, double fraction = 0.2);

}  // namespace qtripod
