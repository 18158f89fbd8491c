#include "qtripod/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "qtripod/error.hpp"

namespace qtripod {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

[[noreturn]] void fail(std::string_view where, const std::string& message) {
    throw ConfigError(fmt::format("{}: {}", where, message));
}

double real_value(std::string_view key, std::string_view value, std::string_view where) {
    try {
        return parse_real(value);
    } catch (const ValidationError&) {
        fail(where, fmt::format("'{}' expects a real number, got '{}'", key, value));
    }
}

int int_value(std::string_view key, std::string_view value, std::string_view where) {
    value = trim(value);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        fail(where, fmt::format("'{}' expects an integer, got '{}'", key, value));
    }
    return v;
}

std::array<double, 3> triple_value(std::string_view key, std::string_view value, std::string_view where) {
    const auto parts = split(value, ',');
    if (parts.size() == 1) {
        const double v = real_value(key, parts[0], where);
        return {v, v, v};
    }
    if (parts.size() != 3) {
        fail(where, fmt::format("'{}' expects one value or three comma-separated values", key));
    }
    return {real_value(key, parts[0], where), real_value(key, parts[1], where), real_value(key, parts[2], where)};
}

std::array<cplx, 4> theta_value(std::string_view value, std::string_view where) {
    const auto entries = split(value, ';');
    if (entries.size() != 4) {
        fail(where, fmt::format("'theta' expects four ';'-separated amplitudes, got {}", entries.size()));
    }
    std::array<cplx, 4> theta{};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto pair = split(entries[i], ',');
        std::optional<double> re, im = 0.0;
        if (pair.size() == 1) {
            re = parse_number(pair[0]);
        } else if (pair.size() == 2) {
            re = parse_number(pair[0]);
            im = parse_number(pair[1]);
        }
        if (!re || !im || pair.size() > 2) {
            fail(where, fmt::format("malformed complex pair '{}' for theta_{} (expected 're' or 're,im')",
                                    entries[i], i + 1));
        }
        theta[i] = {*re, *im};
    }
    return theta;
}

template <class Enum, std::size_t N>
Enum enum_value(std::string_view key, std::string_view value, std::string_view where,
                const std::array<std::pair<std::string_view, Enum>, N>& table) {
    value = trim(value);
    std::string allowed;
    for (const auto& [name, e] : table) {
        if (value == name) return e;
        allowed += allowed.empty() ? std::string(name) : fmt::format(", {}", name);
    }
    fail(where, fmt::format("'{}' must be one of {{{}}}, got '{}'", key, allowed, value));
}

constexpr std::array engine_names{std::pair{std::string_view{"closed-form"}, Engine::ClosedForm},
                                  std::pair{std::string_view{"ode"}, Engine::Ode},
                                  std::pair{std::string_view{"auto"}, Engine::Auto}};
constexpr std::array fidelity_names{std::pair{std::string_view{"exact"}, FidelityMode::Exact},
                                    std::pair{std::string_view{"paper-literal"}, FidelityMode::PaperLiteral},
                                    std::pair{std::string_view{"both"}, FidelityMode::Both}};
constexpr std::array convention_names{std::pair{std::string_view{"standard"}, QConvention::Standard},
                                      std::pair{std::string_view{"paper-literal"}, QConvention::PaperLiteral}};
constexpr std::array ode_mode_names{std::pair{std::string_view{"reduced"}, OracleMode::Reduced4Level},
                                    std::pair{std::string_view{"pre-rwa"}, OracleMode::PreRWA},
                                    std::pair{std::string_view{"literal-phases"}, OracleMode::LiteralPhases}};

template <class Enum, std::size_t N>
std::string_view enum_name(Enum e, const std::array<std::pair<std::string_view, Enum>, N>& table) {
    for (const auto& [name, v] : table) {
        if (v == e) return name;
    }
    return "?";
}

constexpr std::array<std::string_view, 9> scalar_keys{"M",       "q",     "tau",     "mu_over_lambda", "delta_over_lambda",
                                                      "chi_over_lambda", "t_max", "samples", "ode_step"};

}  // namespace

double parse_real(std::string_view token) {
    std::string_view s = trim(token);
    if (auto v = parse_number(s)) return *v;

    // [sign] [coef '*'] 'pi' ['/' denom]
    double sign = 1.0;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        sign = s.front() == '-' ? -1.0 : 1.0;
        s = trim(s.substr(1));
    }
    double coef = 1.0;
    if (const auto star = s.find('*'); star != std::string_view::npos) {
        const auto c = parse_number(s.substr(0, star));
        if (!c) throw ValidationError(fmt::format("cannot parse '{}' as a real number", token));
        coef = *c;
        s = trim(s.substr(star + 1));
    }
    double denom = 1.0;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto d = parse_number(s.substr(slash + 1));
        if (!d || *d == 0.0) throw ValidationError(fmt::format("cannot parse '{}' as a real number", token));
        denom = *d;
        s = trim(s.substr(0, slash));
    }
    if (s != "pi") throw ValidationError(fmt::format("cannot parse '{}' as a real number", token));
    return sign * coef * std::numbers::pi / denom;
}

bool is_scalar_key(std::string_view key) {
    return std::find(scalar_keys.begin(), scalar_keys.end(), key) != scalar_keys.end();
}

std::string_view to_string(Engine e) { return enum_name(e, engine_names); }
std::string_view to_string(FidelityMode m) { return enum_name(m, fidelity_names); }
std::string_view to_string(QConvention c) { return enum_name(c, convention_names); }
std::string_view to_string(OracleMode m) { return enum_name(m, ode_mode_names); }

void set_config_value(RunConfig& c, std::string_view key, std::string_view value, std::string_view where) {
    value = trim(value);
    if (key == "M") {
        const int M = int_value(key, value, where);
        if (M < 0 || M > 1000) fail(where, fmt::format("'M' = {} is outside [0, 1000]", M));
        c.M = M;
    } else if (key == "q") {
        const double q = real_value(key, value, where);
        if (!(q > 0.0 && q <= 1.0)) fail(where, fmt::format("'q' = {} is outside (0, 1]", q));
        c.q = q;
    } else if (key == "tau") {
        const double tau = real_value(key, value, where);
        if (!(tau > 0.0 && tau < 1.0)) fail(where, fmt::format("'tau' = {} is outside the open interval (0, 1)", tau));
        c.tau = tau;
    } else if (key == "convention") {
        c.convention = enum_value(key, value, where, convention_names);
    } else if (key == "lambda_ratios") {
        c.lambda_ratios = triple_value(key, value, where);
    } else if (key == "mu_over_lambda") {
        c.mu_over_lambda = real_value(key, value, where);
    } else if (key == "delta_over_lambda") {
        c.delta_over_lambda = triple_value(key, value, where);
    } else if (key == "chi_over_lambda") {
        c.chi_over_lambda = real_value(key, value, where);
    } else if (key == "theta") {
        c.theta = theta_value(value, where);
    } else if (key == "t_max") {
        const double t = real_value(key, value, where);
        if (!(t > 0.0)) fail(where, fmt::format("'t_max' = {} must be > 0", t));
        c.t_max = t;
    } else if (key == "samples") {
        const int s = int_value(key, value, where);
        if (s < 2 || s > 10'000'000) fail(where, fmt::format("'samples' = {} is outside [2, 10000000]", s));
        c.samples = s;
    } else if (key == "engine") {
        c.engine = enum_value(key, value, where, engine_names);
    } else if (key == "fidelity_mode") {
        c.fidelity_mode = enum_value(key, value, where, fidelity_names);
    } else if (key == "output") {
        c.output = std::string(value);
    } else if (key == "ode_step") {
        const double h = real_value(key, value, where);
        if (!(h > 0.0 && h <= 0.1)) fail(where, fmt::format("'ode_step' = {} is outside (0, 0.1]", h));
        c.ode_step = h;
    } else if (key == "ode_mode") {
        c.ode_mode = enum_value(key, value, where, ode_mode_names);
    } else {
        fail(where, fmt::format("unknown key '{}'", key));
    }
}

void finalize_config(RunConfig& c) {
    double norm2 = 0.0;
    for (const auto& t : c.theta) norm2 += std::norm(t);
    const double dev = std::abs(norm2 - 1.0);
    if (dev > 1e-6 || !std::isfinite(norm2)) {
        throw ConfigError(fmt::format("theta has squared norm {:.12g}; it must be 1 (auto-normalisation only "
                                      "within 1e-6)",
                                      norm2));
    }
    if (dev > 1e-12) {
        const double s = 1.0 / std::sqrt(norm2);
        for (auto& t : c.theta) t *= s;
        c.warnings.push_back(fmt::format("theta renormalised (squared norm was {:.15g})", norm2));
    }
}

RunConfig load_config(std::string_view text, const std::vector<std::string>& overrides) {
    RunConfig c;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++line_no;
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = fmt::format("line {}", line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(where, fmt::format("expected 'key = value', got '{}'", line));
        set_config_value(c, trim(line.substr(0, eq)), line.substr(eq + 1), where);
    }
    for (const auto& ov : overrides) {
        const std::string where = fmt::format("--set {}", ov);
        const auto eq = ov.find('=');
        if (eq == std::string::npos) fail(where, "expected key=value");
        set_config_value(c, trim(std::string_view(ov).substr(0, eq)), std::string_view(ov).substr(eq + 1), where);
    }
    finalize_config(c);
    return c;
}

std::string to_config_text(const RunConfig& c) {
    auto triple = [](const std::array<double, 3>& a) {
        return a[0] == a[1] && a[1] == a[2] ? fmt::format("{}", a[0]) : fmt::format("{}, {}, {}", a[0], a[1], a[2]);
    };
    std::ostringstream os;
    os << fmt::format("M = {}\n", c.M);
    os << fmt::format("q = {}\n", c.q);
    os << fmt::format("tau = {}\n", c.tau);
    os << fmt::format("convention = {}\n", to_string(c.convention));
    os << fmt::format("lambda_ratios = {}\n", triple(c.lambda_ratios));
    os << fmt::format("mu_over_lambda = {}\n", c.mu_over_lambda);
    os << fmt::format("delta_over_lambda = {}\n", triple(c.delta_over_lambda));
    os << fmt::format("chi_over_lambda = {}\n", c.chi_over_lambda);
    os << fmt::format("theta = {},{}; {},{}; {},{}; {},{}\n", c.theta[0].real(), c.theta[0].imag(), c.theta[1].real(),
                      c.theta[1].imag(), c.theta[2].real(), c.theta[2].imag(), c.theta[3].real(), c.theta[3].imag());
    os << fmt::format("t_max = {}\n", c.t_max);
    os << fmt::format("samples = {}\n", c.samples);
    os << fmt::format("engine = {}\n", to_string(c.engine));
    os << fmt::format("fidelity_mode = {}\n", to_string(c.fidelity_mode));
    os << fmt::format("ode_step = {}\n", c.ode_step);
    os << fmt::format("ode_mode = {}\n", to_string(c.ode_mode));
    if (!c.output.empty()) os << fmt::format("output = {}\n", c.output);
    return os.str();
}

ModelParams RunConfig::model_params() const {
    ModelParams p;
    p.lambda = lambda_ratios;
    p.mu = mu_over_lambda;
    p.delta = delta_over_lambda;
    p.chi = chi_over_lambda;
    p.field = FieldSpec(M, tau, DeformationSpec(q, convention));
    return p;
}

AtomInit RunConfig::atom_init() const { return AtomInit(theta); }

std::vector<double> RunConfig::time_grid() const {
    std::vector<double> grid(static_cast<std::size_t>(samples));
    const double dt = t_max / static_cast<double>(samples - 1);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = static_cast<double>(k) * dt;
    grid.back() = t_max;
    return grid;
}

}  // namespace qtripod
