#include "qtripod/qalgebra.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qtripod/error.hpp"

namespace qtripod {

DeformationSpec::DeformationSpec(double q, QConvention convention) : q_(q), convention_(convention) {
    if (!(q > 0.0 && q <= 1.0)) {
        throw ValidationError(fmt::format("deformation q = {} is outside (0, 1]", q));
    }
}

FieldSpec::FieldSpec(int M, double tau, DeformationSpec deformation)
    : M_(M), tau_(tau), deformation_(deformation) {
    if (M < 0) {
        throw ValidationError(fmt::format("binomial order M = {} must be >= 0", M));
    }
    if (!(tau > 0.0 && tau < 1.0)) {
        throw ValidationError(fmt::format("tau = {} is outside the open interval (0, 1)", tau));
    }
}

double q_number(int n, const DeformationSpec& d) {
    if (n <= 0) return 0.0;
    if (d.classical()) return static_cast<double>(n);
    // 1 - q^{+-n} through expm1/log1p keeps full relative precision as q -> 1.
    const double one_minus_q = 1.0 - d.q();
    const double log_q = std::log1p(-one_minus_q);
    const double exponent = d.convention() == QConvention::Standard ? n * log_q : -n * log_q;
    return -std::expm1(exponent) / one_minus_q;
}

double q_factorial(int n, const DeformationSpec& d) {
    if (n < 0) {
        throw ValidationError(fmt::format("q_factorial of negative n = {}", n));
    }
    double result = 1.0;
    for (int k = 1; k <= n; ++k) result *= q_number(k, d);
    return result;
}

double q_binomial_coeff(int M, int n, const DeformationSpec& d) {
    if (M < 0 || n < 0 || n > M) {
        throw ValidationError(fmt::format("q_binomial_coeff({}, {}) requires 0 <= n <= M", M, n));
    }
    const int k = std::min(n, M - n);
    double result = 1.0;
    for (int j = 1; j <= k; ++j) {
        result *= q_number(M - k + j, d) / q_number(j, d);
    }
    return result;
}

double q_one_minus_pow(double tau, int m, const DeformationSpec& d) {
    if (m < 0) {
        throw ValidationError(fmt::format("q_one_minus_pow exponent m = {} must be >= 0", m));
    }
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw ValidationError(fmt::format("q_one_minus_pow tau = {} is outside [0, 1]", tau));
    }
    double result = 1.0;
    for (int k = 0; k < m; ++k) result *= 1.0 - std::pow(d.q(), k) * tau;
    return result;
}

double binomial_pmf(int n, const FieldSpec& f) {
    if (n < 0 || n > f.M()) {
        throw ValidationError(fmt::format("binomial_pmf index n = {} outside [0, {}]", n, f.M()));
    }
    const auto& d = f.deformation();
    return q_binomial_coeff(f.M(), n, d) * std::pow(f.tau(), n) *
           q_one_minus_pow(f.tau(), f.M() - n, d);
}

bool BinomialState::renormalized() const { return std::abs(raw_pmf_sum - 1.0) > 1e-10; }

BinomialState binomial_state(const FieldSpec& f) {
    BinomialState state;
    std::vector<double> pmf(static_cast<std::size_t>(f.M()) + 1);
    double sum = 0.0;
    for (int n = 0; n <= f.M(); ++n) {
        double b = binomial_pmf(n, f);
        if (!std::isfinite(b) || b < -1e-14) {
            throw NumericalError(fmt::format(
                "binomial pmf b({}; {}, {}) = {} is negative or non-finite; "
                "the q-number convention is inconsistent with these parameters",
                n, f.M(), f.tau(), b));
        }
        b = std::max(b, 0.0);
        pmf[static_cast<std::size_t>(n)] = b;
        sum += b;
    }
    if (!(sum > 0.0)) {
        throw NumericalError("binomial pmf sums to zero");
    }
    state.raw_pmf_sum = sum;
    state.beta.resize(pmf.size());
    std::transform(pmf.begin(), pmf.end(), state.beta.begin(),
                   [sum](double b) { return std::sqrt(b / sum); });
    return state;
}

}  // namespace qtripod
