#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "qtripod/dynamics.hpp"
#include "qtripod/error.hpp"
#include "qtripod/oracle.hpp"
#include "reference.hpp"

using namespace qtripod;
using qtripod::testing::random_atom_init;

namespace {

std::vector<double> uniform_grid(double t_max, int points) {
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) g[static_cast<std::size_t>(k)] = t_max * k / (points - 1);
    return g;
}

ModelParams params_with(int M, double q, double tau, double mu, std::array<double, 3> delta, double chi,
                        std::array<double, 3> lambda = {1.0, 1.0, 1.0}) {
    ModelParams p;
    p.mu = mu;
    p.delta = delta;
    p.chi = chi;
    p.lambda = lambda;
    p.field = FieldSpec(M, tau, DeformationSpec(q));
    return p;
}

// In the frame psi_{r+1} = e^{i eps_r t} phi_r the block Hamiltonian is constant:
// [[v1, g_r], [g_r, diag(v2 + eps_r)]]. Diagonalise it and rotate back.
std::array<cplx, 4> exact_block(int n, const ModelParams& p, const AtomInit& init, double T) {
    const auto& d = p.field.deformation();
    const double qn = q_number(n, d), qn1 = q_number(n + 1, d);
    const double v1 = p.chi * qn * q_number(n - 1, d), v2 = p.chi * qn * qn1;
    Eigen::Matrix4d H = Eigen::Matrix4d::Zero();
    H(0, 0) = v1;
    for (int r = 0; r < 3; ++r) {
        const double g = 0.5 * p.lambda[static_cast<std::size_t>(r)] * std::sqrt(qn1);
        H(0, r + 1) = H(r + 1, 0) = g;
        H(r + 1, r + 1) = v2 + p.epsilon(r);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(H);
    Eigen::Vector4cd y0;
    for (int i = 0; i < 4; ++i) y0[i] = init[static_cast<std::size_t>(i)];
    Eigen::Vector4cd phase;
    for (int i = 0; i < 4; ++i) phase[i] = std::polar(1.0, -es.eigenvalues()[i] * T);
    const Eigen::Matrix4cd V = es.eigenvectors().cast<cplx>();
    const Eigen::Vector4cd y = V * phase.asDiagonal() * V.adjoint() * y0;
    std::array<cplx, 4> out{y[0], y[1], y[2], y[3]};
    for (int r = 0; r < 3; ++r) out[static_cast<std::size_t>(r + 1)] *= std::polar(1.0, p.epsilon(r) * T);
    return out;
}

}  // namespace

TEST(BlockGenerator, HermitianInPhysicalModes) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 40.0);
    const auto p = params_with(10, 0.9, 0.3, 1.1, {2.0, -1.0, 0.5}, 0.1, {1.0, 0.7, 1.3});
    for (int trial = 0; trial < 50; ++trial) {
        const double t = u(rng);
        for (int n : {0, 3, 10}) {
            for (auto mode : {OracleMode::Reduced4Level, OracleMode::PreRWA}) {
                const auto H = block_generator(n, t, p, mode);
                EXPECT_LT((H - H.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
            }
        }
    }
    const auto H = block_generator(2, 0.7, p, OracleMode::LiteralPhases);
    EXPECT_GT((H - H.adjoint()).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(BlockGenerator, ReducedEntries) {
    const auto p = params_with(5, 0.9, 0.3, 0.4, {2.0, 2.0, 2.0}, 0.2);
    const auto b = derived_block(3, p);
    const double t = 1.9;
    const auto H = block_generator(3, t, p, OracleMode::Reduced4Level);
    EXPECT_NEAR(H(0, 0).real(), b.v1, 1e-14);
    EXPECT_NEAR(H(2, 2).real(), b.v2, 1e-14);
    EXPECT_LT(std::abs(H(0, 1) - b.g * std::polar(1.0, -b.eps * t)), 1e-14);
    EXPECT_LT(std::abs(H(3, 0) - b.g * std::polar(1.0, b.eps * t)), 1e-14);
}

TEST(BlockGenerator, PreRwaAtZeroModulationDoublesCoupling) {
    const auto p = params_with(5, 0.9, 0.3, 0.0, {1.5, 1.5, 1.5}, 0.1);
    auto doubled = p;
    doubled.lambda = {2.0, 2.0, 2.0};
    for (double t : {0.0, 0.4, 3.3}) {
        const auto a = block_generator(2, t, p, OracleMode::PreRWA);
        const auto b = block_generator(2, t, doubled, OracleMode::Reduced4Level);
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Integrate, MatchesConstantFrameSolutionForAsymmetricModels) {
    std::mt19937_64 rng(17);
    const auto p = params_with(6, 0.8, 0.4, 0.9, {2.0, -1.0, 0.5}, 0.3, {1.0, 0.6, 1.4});
    const auto init = random_atom_init(rng, false);
    const auto grid = uniform_grid(8.0, 9);
    IntegratorOptions opts;
    opts.step = 5e-4;
    const auto traj = integrate_reduced(p, init, grid, opts);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        for (int n = 0; n <= 6; ++n) {
            const auto ref = exact_block(n, p, init, grid[k]);
            const auto& got = traj.amplitudes(k, n);
            for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(got[i] - ref[i]), 1e-9) << k << " " << n;
        }
    }
}

TEST(Integrate, MatchesClosedFormOnSymmetricModel) {
    const auto p = params_with(12, 0.9, 0.3, std::numbers::pi / 2, {2.0, 2.0, 2.0}, 0.1);
    const auto grid = uniform_grid(10.0, 41);
    const auto traj = integrate_reduced(p, AtomInit::uniform(), grid);
    const ClosedFormEvolution evo(p, AtomInit::uniform());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto diff = (traj.state(k).amplitudes() - evo.state(grid[k]).amplitudes()).cwiseAbs().maxCoeff();
        EXPECT_LT(diff, 1e-9);
    }
    EXPECT_LT(traj.max_norm_drift(), 1e-10);
    EXPECT_LT(traj.max_block_norm_drift(), 1e-10);
    EXPECT_TRUE(traj.step_within_target());
}

TEST(Integrate, PreRwaConservesNorm) {
    const auto p = params_with(8, 0.9, 0.3, std::numbers::pi, {2.0, 2.0, 2.0}, 0.1);
    const auto traj = integrate_pre_rwa(p, AtomInit::excited(), uniform_grid(5.0, 11));
    EXPECT_EQ(traj.mode(), OracleMode::PreRWA);
    EXPECT_LT(traj.max_norm_drift(), 1e-9);
}

TEST(Integrate, LiteralPhasesDiffersFromHermitianModel) {
    const auto p = params_with(4, 0.9, 0.3, 0.0, {2.0, 2.0, 2.0}, 0.0);
    const auto grid = uniform_grid(3.0, 4);
    IntegratorOptions lit;
    lit.mode = OracleMode::LiteralPhases;
    const auto a = integrate_reduced(p, AtomInit::uniform(), grid, lit);
    const auto b = integrate_reduced(p, AtomInit::uniform(), grid);
    EXPECT_GT((a.state(3).amplitudes() - b.state(3).amplitudes()).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Integrate, GridAndStepValidation) {
    const auto p = params_with(3, 0.9, 0.3, 0.0, {0.0, 0.0, 0.0}, 0.0);
    const std::vector<double> bad_start{0.5, 1.0};
    const std::vector<double> not_increasing{0.0, 1.0, 1.0};
    EXPECT_THROW(integrate_reduced(p, AtomInit::excited(), bad_start), ValidationError);
    EXPECT_THROW(integrate_reduced(p, AtomInit::excited(), not_increasing), ValidationError);
    EXPECT_THROW(integrate_reduced(p, AtomInit::excited(), std::vector<double>{}), ValidationError);
    IntegratorOptions zero;
    zero.step = 0.0;
    EXPECT_THROW(integrate_reduced(p, AtomInit::excited(), uniform_grid(1.0, 2), zero), ValidationError);
    IntegratorOptions huge;
    huge.step = 0.1;
    const auto kerr = params_with(30, 0.9, 0.3, 0.0, {0.0, 0.0, 0.0}, 10.0);
    EXPECT_THROW(integrate_reduced(kerr, AtomInit::excited(), uniform_grid(1.0, 2), huge), NumericalError);
}

TEST(Integrate, CoarseStepFlagged) {
    const auto p = params_with(30, 0.9, 0.3, 0.0, {6.0, 6.0, 6.0}, 0.0);
    IntegratorOptions coarse;
    coarse.step = 0.05;
    const auto traj = integrate_reduced(p, AtomInit::excited(), uniform_grid(1.0, 3), coarse);
    EXPECT_FALSE(traj.step_within_target());
    EXPECT_FALSE(traj.diagnostic().empty());
    EXPECT_GT(traj.error_estimate_per_unit_time(), 1e-9);
}

TEST(Integrate, StepConvergesAtFourthOrder) {
    const auto p = params_with(10, 0.9, 0.3, std::numbers::pi / 2, {2.0, 2.0, 2.0}, 0.1);
    const ClosedFormEvolution evo(p, AtomInit::excited());
    const std::vector<double> grid{0.0, 5.0};
    auto err = [&](double h) {
        IntegratorOptions o;
        o.step = h;
        const auto t = integrate_reduced(p, AtomInit::excited(), grid, o);
        return (t.state(1).amplitudes() - evo.state(5.0).amplitudes()).norm();
    };
    const double ratio = err(0.04) / err(0.02);
    EXPECT_GT(ratio, 12.0);
    EXPECT_LT(ratio, 20.0);
}
