#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qtripod/dynamics.hpp"
#include "qtripod/error.hpp"
#include "reference.hpp"

using namespace qtripod;
using qtripod::testing::random_atom_init;
using qtripod::testing::rk4_reduced_block;

namespace {

constexpr cplx I{0.0, 1.0};

ModelParams symmetric_params(double q, double tau, double mu, double delta, double chi) {
    ModelParams p;
    p.mu = mu;
    p.delta = {delta, delta, delta};
    p.chi = chi;
    p.field = FieldSpec(30, tau, DeformationSpec(q));
    return p;
}

BlockParams random_block(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0), ug(0.05, 3.0);
    BlockParams b;
    b.v1 = u(rng);
    b.v2 = u(rng);
    b.g = ug(rng);
    b.eps = u(rng);
    return b;
}

}  // namespace

TEST(DerivedBlock, NoKerrMeansNoDiagonal) {
    const auto p = symmetric_params(0.9, 0.07, 1.0, 2.0, 0.0);
    for (int n = 0; n <= 30; ++n) {
        const auto b = derived_block(n, p);
        EXPECT_EQ(b.v1, 0.0);
        EXPECT_EQ(b.v2, 0.0);
        EXPECT_DOUBLE_EQ(b.eps, 1.0);
    }
}

TEST(DerivedBlock, VacuumBlock) {
    for (double q : {0.3, 0.9, 1.0}) {
        const auto b = derived_block(0, symmetric_params(q, 0.07, 0.0, 0.0, 0.8));
        EXPECT_EQ(b.v1, 0.0);
        EXPECT_DOUBLE_EQ(b.g, 0.5);
    }
}

TEST(DerivedBlock, ClassicalKerrValues) {
    const auto b = derived_block(2, symmetric_params(1.0, 0.07, 0.0, 0.0, 1.0));
    EXPECT_DOUBLE_EQ(b.v1, 2.0);  // n(n-1)
    EXPECT_DOUBLE_EQ(b.v2, 6.0);  // n(n+1)
    EXPECT_DOUBLE_EQ(b.g, 0.5 * std::sqrt(3.0));
}

TEST(DerivedBlock, Errors) {
    auto p = symmetric_params(0.9, 0.07, 0.0, 0.0, 0.0);
    p.delta = {1.0, 2.0, 1.0};
    EXPECT_THROW(derived_block(0, p), PremiseError);

    auto lit = symmetric_params(0.9, 0.07, 0.0, 0.0, 0.0);
    lit.field = FieldSpec(30, 0.07, DeformationSpec(0.9, QConvention::PaperLiteral));
    EXPECT_THROW(derived_block(0, lit), NumericalError);
    EXPECT_THROW(ClosedFormEvolution(lit, AtomInit::excited()), NumericalError);
}

TEST(CharacteristicRoots, ResonantVacuum) {
    BlockParams b;
    b.g = 0.5;
    const auto r = characteristic_roots(b);
    EXPECT_NEAR(r.X1.real(), -std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_NEAR(r.X2.real(), std::sqrt(3.0) / 2.0, 1e-15);
}

TEST(CharacteristicRoots, DecoupledLimit) {
    BlockParams b;
    b.v1 = 1.25;
    b.v2 = 0.5;
    b.eps = -3.0;
    const auto r = characteristic_roots(b);
    EXPECT_DOUBLE_EQ(r.X1.real(), -1.25);       // -v1
    EXPECT_DOUBLE_EQ(r.X2.real(), 2.5);         // -(eps + v2)
}

TEST(CharacteristicRoots, VietaAndRealityProperty) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto b = random_block(rng);
        const auto r = characteristic_roots(b);
        const double scale = std::max({1.0, std::abs(b.a1()), std::abs(r.X1), std::abs(r.X2)});
        EXPECT_LT(std::abs(r.X1 + r.X2 + b.a1()) / scale, 1e-12);
        EXPECT_LT(std::abs(r.X1 * r.X2 - b.a2()) / (scale * scale), 1e-12);
        EXPECT_LT(std::abs(r.X1.imag()), 1e-12);
        EXPECT_LT(std::abs(r.X2.imag()), 1e-12);
        EXPECT_LE(r.X1.real(), r.X2.real());
    }
}

TEST(ModeCoefficients, InitialConditionsProperty) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const auto b = random_block(rng);
        const auto init = random_atom_init(rng, true);
        const auto c = mode_coefficients(b, init);
        EXPECT_LT(std::abs(c.B1 + c.B2 - init[0]), 1e-12);
        EXPECT_LT(std::abs(c.C1 + c.C2 - init[1]), 1e-12);
        const BlockSolution sol(b, init[0], init[1]);
        const auto [p1, p2] = sol.amplitudes(0.0);
        EXPECT_LT(std::abs(p1 - init[0]), 1e-12);
        EXPECT_LT(std::abs(p2 - init[1]), 1e-12);
    }
}

TEST(ModeCoefficients, ResonantRabiSolution) {
    BlockParams b;
    b.g = 0.5;
    const BlockSolution sol(b, 1.0, 0.0);
    const double w = std::sqrt(3.0) * b.g;
    for (double t : {0.0, 0.3, 1.7, 4.2, 11.0}) {
        const auto [p1, p2] = sol.amplitudes(t);
        EXPECT_LT(std::abs(p1 - std::cos(w * t)), 1e-13);
        EXPECT_LT(std::abs(p2 - (-I * std::sin(w * t) / std::sqrt(3.0))), 1e-13);
        const auto [r1, r2] = rk4_reduced_block(b, 1.0, 0.0, t, 4000);
        if (t > 0) {
            EXPECT_LT(std::abs(p1 - r1), 1e-10);
            EXPECT_LT(std::abs(p2 - r2), 1e-10);
        }
    }
}

TEST(ModeCoefficients, MatchesReducedOdeProperty) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const auto b = random_block(rng);
        const auto init = random_atom_init(rng, true);
        const BlockSolution sol(b, init[0], init[1]);
        const double T = 6.0;
        const auto [p1, p2] = sol.amplitudes(T);
        const auto [r1, r2] = rk4_reduced_block(b, init[0], init[1], T, 60000);
        EXPECT_LT(std::abs(p1 - r1), 1e-9) << "trial " << trial;
        EXPECT_LT(std::abs(p2 - r2), 1e-9) << "trial " << trial;
    }
}

TEST(ModeCoefficients, DecoupledLegUsesThetaDirectly) {
    BlockParams b;
    b.v1 = 0.3;
    b.v2 = 1.1;
    b.eps = 0.7;
    const cplx th1{0.6, 0.0}, th2{0.0, std::sqrt((1 - 0.36) / 3)};
    const BlockSolution sol(b, th1, th2);
    ASSERT_FALSE(sol.confluent());
    for (double t : {0.0, 2.0, 9.5}) {
        const auto [p1, p2] = sol.amplitudes(t);
        EXPECT_LT(std::abs(p1 - th1 * std::polar(1.0, -b.v1 * t)), 1e-14);
        EXPECT_LT(std::abs(p2 - th2 * std::polar(1.0, -b.v2 * t)), 1e-14);
    }
}

TEST(ModeCoefficients, DegenerateRootsUseConfluentForm) {
    BlockParams b;  // g = 0, v1 = eps + v2: exact double root
    b.v1 = 0.4;
    b.v2 = 0.1;
    b.eps = 0.3;
    EXPECT_TRUE(roots_degenerate(characteristic_roots(b)));
    EXPECT_THROW(mode_coefficients(b, AtomInit::excited()), NumericalError);
    const BlockSolution sol(b, 0.5, 0.5);
    EXPECT_TRUE(sol.confluent());
    const auto [p1, p2] = sol.amplitudes(3.0);
    EXPECT_LT(std::abs(p1 - 0.5 * std::polar(1.0, -0.4 * 3.0)), 1e-14);
    EXPECT_LT(std::abs(p2 - 0.5 * std::polar(1.0, -0.1 * 3.0)), 1e-14);

    // Nearly degenerate: tiny coupling, still accurate against a direct integration.
    BlockParams near;
    near.g = 1e-11;
    const BlockSolution nsol(near, 0.5, 0.5);
    EXPECT_TRUE(nsol.confluent());
    const auto [n1, n2] = nsol.amplitudes(20.0);
    const auto [r1, r2] = rk4_reduced_block(near, 0.5, 0.5, 20.0, 2000);
    EXPECT_LT(std::abs(n1 - r1), 1e-13);
    EXPECT_LT(std::abs(n2 - r2), 1e-13);
}

TEST(ClosedForm, InitialStateReproduced) {
    std::mt19937_64 rng(3);
    const auto p = symmetric_params(0.9, 0.07, std::numbers::pi / 2, 2.0, 0.1);
    const auto init = random_atom_init(rng, true);
    const ClosedFormEvolution evo(p, init);
    const JointState s0 = evo.state(0.0);
    const JointState ref = initial_state(evo.field_state().beta, init);
    EXPECT_LT((s0.amplitudes() - ref.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ClosedForm, FreeEvolutionIsStatic) {
    auto p = symmetric_params(0.9, 0.07, 1.3, 2.0, 0.0);
    p.lambda = {0.0, 0.0, 0.0};
    const ClosedFormEvolution evo(p, AtomInit::uniform());
    const JointState s0 = evo.state(0.0);
    for (double T : {0.5, 7.0, 50.0}) {
        EXPECT_LT((evo.state(T).amplitudes() - s0.amplitudes()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(ClosedForm, NormAndBlockNormConserved) {
    const double mus[] = {0.0, std::numbers::pi / 2, std::numbers::pi};
    for (double q : {0.5, 0.9, 1.0 - 1e-9}) {
        for (double chi : {0.0, 0.8}) {
            for (double mu : mus) {
                const auto p = symmetric_params(q, 0.8, mu, 6.0, chi);
                const ClosedFormEvolution evo(p, AtomInit::uniform());
                for (double T = 0.0; T <= 50.0; T += 0.37) {
                    EXPECT_LT(std::abs(evo.state(T).norm() - 1.0), 1e-10);
                    for (const auto& blk : evo.blocks()) {
                        const auto [p1, p2] = blk.amplitudes(T);
                        EXPECT_LT(std::abs(std::norm(p1) + 3.0 * std::norm(p2) - 1.0), 1e-10);
                    }
                }
            }
        }
    }
}

TEST(ClosedForm, VacuumRabiPeriod) {
    const auto p = symmetric_params(0.9, 0.07, 0.0, 0.0, 0.0);
    const ClosedFormEvolution evo(p, AtomInit::excited());
    const double period = 2.0 * std::numbers::pi / std::sqrt(3.0);
    for (double T = 0.0; T < 20.0; T += 0.31) {
        const auto [p1, p2] = evo.blocks()[0].amplitudes(T);
        EXPECT_NEAR(std::norm(p1), std::pow(std::cos(std::sqrt(3.0) * T / 2.0), 2), 1e-13);
        const auto [q1, q2] = evo.blocks()[0].amplitudes(T + period);
        EXPECT_NEAR(std::norm(p1), std::norm(q1), 1e-12);
    }
}

TEST(ClosedForm, PremisesEnforced) {
    auto p = symmetric_params(0.9, 0.07, 0.0, 0.0, 0.0);
    EXPECT_THROW(ClosedFormEvolution(p, AtomInit({cplx{0.5}, cplx{0.5}, cplx{-0.5}, cplx{0.5}})), PremiseError);
    p.lambda = {1.0, 0.9, 1.0};
    EXPECT_THROW(ClosedFormEvolution(p, AtomInit::excited()), PremiseError);
    EXPECT_FALSE(closed_form_applicable(p, AtomInit::excited()));
}

TEST(ClosedForm, Deterministic) {
    const auto p = symmetric_params(0.9, 0.8, std::numbers::pi, 4.0, 0.1);
    const ClosedFormEvolution a(p, AtomInit::uniform()), b(p, AtomInit::uniform());
    for (double T : {0.0, 13.37, 49.9}) EXPECT_EQ(a.state(T).amplitudes(), b.state(T).amplitudes());
}
