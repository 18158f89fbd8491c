#pragma once

// Fixed-step RK4 integration of the per-block 4x4 Schrodinger equation. No symmetry
// assumptions: unequal couplings and detunings, arbitrary theta, and the
// unapproximated time-dependent coupling are all handled here.

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qtripod/model.hpp"

namespace qtripod {

enum class OracleMode {
    Reduced4Level,  ///< RWA-like Hamiltonian with mutually conjugate phases e^{-+i eps_r t}
    PreRWA,         ///< full coupling lambda_r cos(mu t) e^{-+i Delta_r t}
    LiteralPhases,  ///< column-1 phases e^{-i eps1 t}, e^{+i eps2 t}, e^{-i eps3 t}; not Hermitian
};

struct IntegratorOptions {
    double step = 1e-3;
    OracleMode mode = OracleMode::Reduced4Level;
    /// Estimated global error per unit time above which the run is flagged.
    double accuracy_target = 1e-9;
};

/// Interaction-picture generator of block n at time t, acting on
/// (psi1(n), psi2(n+1), psi3(n+1), psi4(n+1)). Hermitian except in LiteralPhases mode.
Eigen::Matrix4cd block_generator(int n, double t, const ModelParams& params, OracleMode mode);

/// Amplitudes (psi1(n), psi2(n+1), psi3(n+1), psi4(n+1)) of one block at one grid point.
using BlockAmplitudes = std::array<cplx, 4>;

class OracleTrajectory {
public:
    const std::vector<double>& grid() const { return grid_; }
    int M() const { return M_; }
    const std::vector<double>& beta() const { return beta_; }

    const BlockAmplitudes& amplitudes(std::size_t k, int n) const {
        return blocks_[k * static_cast<std::size_t>(M_ + 1) + static_cast<std::size_t>(n)];
    }
    /// Joint state at grid index k.
    JointState state(std::size_t k) const;

    /// max_k | ||Psi(T_k)|| - ||Psi(0)|| |.
    double max_norm_drift() const { return max_norm_drift_; }
    /// max_{k,n} | sum_i |psi_i(n, T_k)|^2 - sum_i |psi_i(n, 0)|^2 |.
    double max_block_norm_drift() const { return max_block_norm_drift_; }

    /// Largest angular frequency the integrator resolves (rotating frame), over all blocks.
    double frequency_scale() const { return frequency_scale_; }
    /// Rough a-priori global RK4 error per unit time: (omega h)^4 omega / 120.
    double error_estimate_per_unit_time() const { return error_estimate_; }
    /// False when error_estimate_per_unit_time() exceeds the requested accuracy target.
    bool step_within_target() const { return step_within_target_; }
    const std::string& diagnostic() const { return diagnostic_; }
    OracleMode mode() const { return mode_; }
    double step() const { return step_; }

private:
    friend OracleTrajectory integrate(const ModelParams&, const AtomInit&, std::span<const double>,
                                      const IntegratorOptions&);
    std::vector<double> grid_;
    int M_ = 0;
    std::vector<double> beta_;
    std::vector<BlockAmplitudes> blocks_;
    double max_norm_drift_ = 0.0;
    double max_block_norm_drift_ = 0.0;
    double frequency_scale_ = 0.0;
    double error_estimate_ = 0.0;
    bool step_within_target_ = true;
    std::string diagnostic_;
    OracleMode mode_ = OracleMode::Reduced4Level;
    double step_ = 0.0;
};

/// Integrates every photon block over `grid` (strictly increasing, starting at 0).
/// Throws ValidationError for a bad grid or step, NumericalError when the step is
/// beyond RK4 stability for the model's frequency scale.
OracleTrajectory integrate(const ModelParams& params, const AtomInit& init, std::span<const double> grid,
                           const IntegratorOptions& options);

/// Reduced4Level (default) or LiteralPhases, per options.mode.
OracleTrajectory integrate_reduced(const ModelParams& params, const AtomInit& init, std::span<const double> grid,
                                   IntegratorOptions options = {});

/// Same integrator with the unapproximated coupling. At mu = 0 the full coupling is
/// lambda, twice the lambda/2 retained by the reduced model.
OracleTrajectory integrate_pre_rwa(const ModelParams& params, const AtomInit& init, std::span<const double> grid,
                                   IntegratorOptions options = {});

}  // namespace qtripod
