#pragma once

// Model parameters, atomic initial condition and the joint atom-field state.
// All rates are ratios to the reference coupling lambda; time is T = lambda t.

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Core>

#include "qtripod/qalgebra.hpp"

namespace qtripod {

using cplx = std::complex<double>;

struct ModelParams {
    /// Couplings lambda_r / lambda for the transitions |1> <-> |r+1>.
    std::array<double, 3> lambda{1.0, 1.0, 1.0};
    /// Modulation frequency of kappa(t) = lambda cos(mu t).
    double mu = 0.0;
    /// Detunings Delta_r / lambda.
    std::array<double, 3> delta{0.0, 0.0, 0.0};
    /// Kerr strength chi / lambda.
    double chi = 0.0;
    FieldSpec field{30, 0.0007};

    /// eps_r = Delta_r - mu.
    double epsilon(int r) const { return delta.at(static_cast<std::size_t>(r)) - mu; }
    /// All three couplings equal and all three detunings equal.
    bool symmetric() const;
};

/// Atomic amplitudes theta_1..theta_4 of the initial product state. Unit norm to 1e-12.
class AtomInit {
public:
    explicit AtomInit(const std::array<cplx, 4>& theta);

    static AtomInit excited() { return AtomInit({cplx{1.0}, cplx{}, cplx{}, cplx{}}); }
    static AtomInit uniform() { return AtomInit({cplx{0.5}, cplx{0.5}, cplx{0.5}, cplx{0.5}}); }

    const std::array<cplx, 4>& theta() const { return theta_; }
    cplx operator[](std::size_t i) const { return theta_[i]; }
    /// theta_2 = theta_3 = theta_4, the premise of the two-level reduction.
    bool lower_levels_equal() const;

private:
    std::array<cplx, 4> theta_;
};

/// Amplitudes over the product basis |n, level>, n = 0..M+1, level = 1..4.
/// Level 1 is the upper level; levels 2..4 are the tripod's lower legs.
class JointState {
public:
    explicit JointState(int M);
    JointState(int M, Eigen::VectorXcd amplitudes);

    int M() const { return M_; }
    int field_dim() const { return M_ + 2; }
    static constexpr int atom_dim = 4;

    static Eigen::Index index(int n, int level) { return static_cast<Eigen::Index>(n) * 4 + (level - 1); }
    cplx& operator()(int n, int level) { return amplitudes_[index(n, level)]; }
    cplx operator()(int n, int level) const { return amplitudes_[index(n, level)]; }

    const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }

    /// View as a field_dim x 4 matrix: row = photon number, column = atomic level.
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, 4, Eigen::RowMajor>> as_matrix() const {
        return {amplitudes_.data(), field_dim(), 4};
    }

private:
    int M_;
    Eigen::VectorXcd amplitudes_;
};

/// |Psi(0)> = sum_n beta_n [theta_1 |n,1> + sum_r theta_{r+1} |n+1,r+1>].
JointState initial_state(const std::vector<double>& beta, const AtomInit& init);

}  // namespace qtripod
