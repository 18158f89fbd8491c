#pragma once

// Independent reference computations used only by tests. Nothing here calls into the
// code path it is used to check.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qtripod/dynamics.hpp"
#include "qtripod/model.hpp"

namespace qtripod::testing {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

/// [n]_q = 1 + q + ... + q^{n-1}, summed in the scalar type.
template <class Real>
Real geometric_q_number(int n, const Real& q) {
    Real sum = 0, term = 1;
    for (int k = 0; k < n; ++k) {
        sum += term;
        term *= q;
    }
    return sum;
}

template <class Real>
Real gaussian_binomial_by_factorials(int M, int n, const Real& q) {
    auto fact = [&](int k) {
        Real f = 1;
        for (int j = 1; j <= k; ++j) f *= geometric_q_number(j, q);
        return f;
    };
    return fact(M) / (fact(M - n) * fact(n));
}

/// sum_k [m k]_q q^{k(k-1)/2} (-tau)^k in 100-digit arithmetic (the cancellation reaches 1e38
/// for m = 64, q = 0.99, tau = 0.8).
inline double alternating_q_pochhammer(double tau, int m, double q) {
    const BigFloat bq = q, btau = tau;
    BigFloat sum = 0;
    for (int k = 0; k <= m; ++k) {
        BigFloat term = gaussian_binomial_by_factorials(m, k, bq) * boost::multiprecision::pow(bq, k * (k - 1) / 2) *
                        boost::multiprecision::pow(-btau, k);
        sum += term;
    }
    return static_cast<double>(sum);
}

inline double classical_binomial(int M, int n) {
    double c = 1.0;
    for (int j = 1; j <= n; ++j) c = c * (M - n + j) / j;
    return c;
}

inline double classical_binomial_pmf(int n, int M, double tau) {
    return classical_binomial(M, n) * std::pow(tau, n) * std::pow(1.0 - tau, M - n);
}

/// Dense |Psi><Psi| over the full product space, then explicit partial traces.
inline Eigen::MatrixXcd brute_force_rho_atom(const JointState& s) {
    const Eigen::VectorXcd& psi = s.amplitudes();
    const Eigen::MatrixXcd full = psi * psi.adjoint();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    for (int n = 0; n < s.field_dim(); ++n)
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) rho(i - 1, j - 1) += full(JointState::index(n, i), JointState::index(n, j));
    return rho;
}

inline Eigen::MatrixXcd brute_force_rho_field(const JointState& s) {
    const Eigen::VectorXcd& psi = s.amplitudes();
    const Eigen::MatrixXcd full = psi * psi.adjoint();
    const int d = s.field_dim();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m)
            for (int i = 1; i <= 4; ++i) rho(n, m) += full(JointState::index(n, i), JointState::index(m, i));
    return rho;
}

inline JointState random_joint_state(int M, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXcd v(4 * (M + 2));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = {normal(rng), normal(rng)};
    v.normalize();
    return JointState(M, v);
}

inline AtomInit random_atom_init(std::mt19937_64& rng, bool lower_equal) {
    std::normal_distribution<double> normal;
    std::array<std::complex<double>, 4> th;
    for (auto& t : th) t = {normal(rng), normal(rng)};
    if (lower_equal) th[2] = th[3] = th[1];
    double n2 = 0.0;
    for (const auto& t : th) n2 += std::norm(t);
    for (auto& t : th) t /= std::sqrt(n2);
    return AtomInit(th);
}

/// Overlap evaluated from the per-block amplitudes instead of the assembled state:
/// |sum_n beta_n^2 (conj(theta1) psi1 + 3 conj(theta2) psi2)|^2.
inline double fidelity_block_sum(const ClosedFormEvolution& evo, double T) {
    const auto& beta = evo.field_state().beta;
    std::complex<double> sum{};
    for (std::size_t n = 0; n < beta.size(); ++n) {
        const auto [p1, p2] = evo.blocks()[n].amplitudes(T);
        sum += beta[n] * beta[n] * (std::conj(evo.init()[0]) * p1 + 3.0 * std::conj(evo.init()[1]) * p2);
    }
    return std::norm(sum);
}

/// Plain RK4 on the two-level reduced system (psi1, psi2) of one block, in the lab frame.
inline std::pair<std::complex<double>, std::complex<double>> rk4_reduced_block(const BlockParams& b,
                                                                               std::complex<double> th1,
                                                                               std::complex<double> th2, double T,
                                                                               int steps) {
    using C = std::complex<double>;
    const C I{0.0, 1.0};
    auto f = [&](double t, C y1, C y2) {
        const C up = 3.0 * b.g * std::polar(1.0, -b.eps * t);
        const C dn = b.g * std::polar(1.0, b.eps * t);
        return std::pair{-I * (b.v1 * y1 + up * y2), -I * (dn * y1 + b.v2 * y2)};
    };
    const double h = T / steps;
    C y1 = th1, y2 = th2;
    for (int s = 0; s < steps; ++s) {
        const double t = s * h;
        auto [a1, a2] = f(t, y1, y2);
        auto [b1, b2] = f(t + h / 2, y1 + h / 2 * a1, y2 + h / 2 * a2);
        auto [c1, c2] = f(t + h / 2, y1 + h / 2 * b1, y2 + h / 2 * b2);
        auto [d1, d2] = f(t + h, y1 + h * c1, y2 + h * c2);
        y1 += h / 6 * (a1 + 2.0 * b1 + 2.0 * c1 + d1);
        y2 += h / 6 * (a2 + 2.0 * b2 + 2.0 * c2 + d2);
    }
    return {y1, y2};
}

}  // namespace qtripod::testing
