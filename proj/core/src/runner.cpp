#include "qtripod/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "qtripod/dynamics.hpp"
#include "qtripod/error.hpp"
#include "qtripod/observables.hpp"
#include "qtripod/oracle.hpp"
#include "qtripod/parallel.hpp"

namespace qtripod {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RowObservables {
    double F_exact = kNaN;
    double F_paper = kNaN;
    double LE = kNaN;
    std::array<double, 4> populations{};
    double norm_err = kNaN;
};

RowObservables observe(const JointState& raw, const JointState& initial, bool want_exact, bool rescale = false) {
    RowObservables row;
    row.norm_err = std::abs(raw.norm() - 1.0);
    // literal-phases runs leave the unit sphere; observables are taken on the rescaled state
    const JointState state = rescale ? JointState(raw.M(), raw.amplitudes() / raw.norm()) : raw;
    const DensityMatrix rho_a = reduce_atom(state);
    for (int i = 0; i < 4; ++i) row.populations[static_cast<std::size_t>(i)] = rho_a(i, i).real();
    row.LE = linear_entropy(state);
    if (want_exact) row.F_exact = fidelity_exact(state, initial);
    return row;
}

void resize(TimeSeries& ts, std::size_t n) {
    ts.F_exact.assign(n, kNaN);
    ts.F_paper.assign(n, kNaN);
    ts.LE.assign(n, kNaN);
    ts.populations.assign(n, {});
    ts.norm_err.assign(n, kNaN);
}

void store(TimeSeries& ts, std::size_t k, const RowObservables& row) {
    ts.F_exact[k] = row.F_exact;
    ts.LE[k] = row.LE;
    ts.populations[k] = row.populations;
    ts.norm_err[k] = row.norm_err;
}

std::string number(double v) { return std::isnan(v) ? std::string("nan") : fmt::format("{:.15g}", v); }

}  // namespace

TimeSeries run_timeseries(const RunConfig& config) {
    const ModelParams params = config.model_params();
    const AtomInit init = config.atom_init();
    const bool applicable = closed_form_applicable(params, init);

    TimeSeries ts;
    ts.meta.notes = config.warnings;
    switch (config.engine) {
        case Engine::ClosedForm:
            if (!applicable) {
                throw PremiseError(
                    "engine = closed-form requires equal couplings, equal detunings and theta_2 = theta_3 = "
                    "theta_4; use engine = ode or auto");
            }
            ts.meta.engine_used = Engine::ClosedForm;
            ts.meta.engine_reason = "requested";
            break;
        case Engine::Ode:
            ts.meta.engine_used = Engine::Ode;
            ts.meta.engine_reason = "requested";
            break;
        case Engine::Auto:
            ts.meta.engine_used = applicable ? Engine::ClosedForm : Engine::Ode;
            ts.meta.engine_reason = applicable ? "auto: closed-form premises hold"
                                               : "auto: fallback to ode (closed-form premises violated)";
            break;
    }

    const BinomialState field = binomial_state(params.field);
    ts.meta.pmf_deviation = field.pmf_deviation();
    ts.meta.pmf_renormalized = field.renormalized();

    ts.T = config.time_grid();
    const std::size_t n = ts.T.size();
    resize(ts, n);
    const JointState initial = initial_state(field.beta, init);
    const bool want_exact = config.fidelity_mode != FidelityMode::PaperLiteral;
    const bool want_paper = config.fidelity_mode != FidelityMode::Exact;

    if (ts.meta.engine_used == Engine::ClosedForm) {
        const ClosedFormEvolution evolution(params, init);
        ts.meta.confluent_blocks = evolution.confluent_blocks();
        parallel_for(n, [&](std::size_t k) {
            store(ts, k, observe(evolution.state(ts.T[k]), initial, want_exact));
            if (want_paper) ts.F_paper[k] = fidelity_paper_literal(ts.T[k], evolution);
        });
    } else {
        IntegratorOptions options;
        options.step = config.ode_step;
        options.mode = config.ode_mode;
        const OracleTrajectory traj = integrate(params, init, ts.T, options);
        ts.meta.ode_step = options.step;
        ts.meta.ode_norm_drift = traj.max_norm_drift();
        ts.meta.ode_diagnostic = traj.diagnostic();
        if (options.mode == OracleMode::PreRWA) {
            ts.meta.notes.push_back(
                "pre-rwa coupling is lambda_r cos(mu t); at mu = 0 it is twice the lambda_r/2 of the reduced model");
        } else if (options.mode == OracleMode::LiteralPhases) {
            ts.meta.notes.push_back(
                "literal-phases generator is not Hermitian; norm is not conserved and observables use the "
                "rescaled state");
        }
        if (want_paper) ts.meta.notes.push_back("F_paper is defined only for the closed-form engine");
        const bool rescale = options.mode == OracleMode::LiteralPhases;
        parallel_for(n, [&](std::size_t k) { store(ts, k, observe(traj.state(k), initial, want_exact, rescale)); });
    }

    const double worst_norm = *std::max_element(ts.norm_err.begin(), ts.norm_err.end());
    if (worst_norm > 1e-9) {
        ts.meta.notes.push_back(fmt::format("max norm error {:.3e} exceeds 1e-9", worst_norm));
    }
    return ts;
}

void write_csv(std::ostream& os, const TimeSeries& ts, const RunConfig& config) {
    const auto& m = ts.meta;
    os << "# qtripod time series\n";
    std::istringstream cfg(to_config_text(config));
    for (std::string line; std::getline(cfg, line);) {
        if (line.rfind("output", 0) == 0) continue;
        os << "# config: " << line << '\n';
    }
    os << fmt::format("# engine: {} ({})\n", to_string(m.engine_used), m.engine_reason);
    os << fmt::format("# pmf_sum_deviation: {:.6e}\n", m.pmf_deviation);
    os << fmt::format("# pmf_renormalized: {}\n", m.pmf_renormalized ? "yes" : "no");
    if (m.engine_used == Engine::ClosedForm) {
        os << fmt::format("# degenerate_root_blocks: {}\n", m.confluent_blocks);
    } else {
        os << fmt::format("# ode_step: {}\n", m.ode_step);
        os << fmt::format("# ode_max_norm_drift: {:.6e}\n", m.ode_norm_drift);
        if (!m.ode_diagnostic.empty()) os << "# ode_warning: " << m.ode_diagnostic << '\n';
    }
    for (const auto& note : m.notes) os << "# note: " << note << '\n';
    os << kCsvHeader << '\n';
    for (std::size_t k = 0; k < ts.T.size(); ++k) {
        const auto& p = ts.populations[k];
        os << number(ts.T[k]) << ',' << number(ts.F_exact[k]) << ',' << number(ts.F_paper[k]) << ','
           << number(ts.LE[k]) << ',' << number(p[0]) << ',' << number(p[1]) << ',' << number(p[2]) << ','
           << number(p[3]) << ',' << number(ts.norm_err[k]) << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const TimeSeries& ts, const RunConfig& config) {
    std::ofstream out(path);
    if (!out) throw NumericalError(fmt::format("cannot open '{}' for writing", path.string()));
    write_csv(out, ts, config);
    if (!out) throw NumericalError(fmt::format("failed writing '{}'", path.string()));
}

std::vector<double> refined_maxima(std::span<const double> T, std::span<const double> v, double threshold) {
    std::vector<double> peaks;
    if (v.size() < 3) return peaks;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (!(v[i] > v[i - 1] && v[i] > v[i + 1] && v[i] > threshold)) continue;
        const double curvature = v[i - 1] - 2.0 * v[i] + v[i + 1];
        const double offset = curvature != 0.0 ? 0.5 * (v[i - 1] - v[i + 1]) / curvature : 0.0;
        const double dt = 0.5 * (T[i + 1] - T[i - 1]);
        peaks.push_back(T[i] + offset * dt);
    }
    return peaks;
}

double revival_period(std::span<const double> T, std::span<const double> F, double threshold) {
    const auto peaks = refined_maxima(T, F, threshold);
    if (peaks.size() < 2) return kNaN;
    std::vector<double> gaps(peaks.size() - 1);
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i) gaps[i] = peaks[i + 1] - peaks[i];
    std::sort(gaps.begin(), gaps.end());
    const std::size_t mid = gaps.size() / 2;
    return gaps.size() % 2 == 1 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
}

double tail_mean(std::span<const double> values, double fraction) {
    if (values.empty()) return kNaN;
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(values.size()))));
    double sum = 0.0;
    for (std::size_t i = values.size() - count; i < values.size(); ++i) sum += values[i];
    return sum / static_cast<double>(count);
}

}  // namespace qtripod
