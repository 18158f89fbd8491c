#pragma once

// Line-oriented `key = value` run configuration.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qtripod/error.hpp"
#include "qtripod/model.hpp"
#include "qtripod/oracle.hpp"

namespace qtripod {

enum class Engine { ClosedForm, Ode, Auto };
enum class FidelityMode { Exact, PaperLiteral, Both };

/// Error in a configuration source; the message carries the source location.
class ConfigError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

struct RunConfig {
    int M = 30;
    double q = 0.9;
    double tau = 0.0007;
    QConvention convention = QConvention::Standard;
    std::array<double, 3> lambda_ratios{1.0, 1.0, 1.0};
    double mu_over_lambda = 0.0;
    std::array<double, 3> delta_over_lambda{0.0, 0.0, 0.0};
    double chi_over_lambda = 0.0;
    std::array<cplx, 4> theta{cplx{1.0}, cplx{}, cplx{}, cplx{}};
    double t_max = 50.0;
    int samples = 5001;
    Engine engine = Engine::Auto;
    FidelityMode fidelity_mode = FidelityMode::Both;
    std::string output;  ///< empty or "-" writes to stdout
    double ode_step = 1e-3;
    OracleMode ode_mode = OracleMode::Reduced4Level;

    /// Non-fatal notices produced while loading (e.g. theta renormalisation).
    std::vector<std::string> warnings;

    ModelParams model_params() const;
    AtomInit atom_init() const;
    /// Uniform grid of `samples` points on [0, t_max].
    std::vector<double> time_grid() const;
};

/// Parses `key = value` lines (`#` starts a comment), applies `overrides` ("key=value")
/// in order, then validates. Unknown keys, out-of-range values and malformed complex
/// entries raise ConfigError naming the line (or the override).
RunConfig load_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Sets one key from its textual value. `where` prefixes error messages.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value, std::string_view where);

/// Cross-field checks and theta normalisation: accepted silently within 1e-12 of unit
/// norm, renormalised with a warning within 1e-6, rejected otherwise.
void finalize_config(RunConfig& config);

/// Canonical text form; load_config(to_config_text(c)) reproduces c.
std::string to_config_text(const RunConfig& config);

/// Keys that take a single real or integer value (valid `--vary` targets).
bool is_scalar_key(std::string_view key);

/// Real number, or a multiple/fraction of pi: "1.5", "pi", "-pi/2", "3*pi/4".
double parse_real(std::string_view token);

std::string_view to_string(Engine e);
std::string_view to_string(FidelityMode m);
std::string_view to_string(QConvention c);
std::string_view to_string(OracleMode m);

}  // namespace qtripod
