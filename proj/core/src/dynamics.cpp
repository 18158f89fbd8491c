#include "qtripod/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qtripod/error.hpp"

namespace qtripod {

namespace {

constexpr cplx I{0.0, 1.0};

// Roots of Y^2 + delta Y - 3 g^2 = 0 with Y = X + v1, computed without cancellation.
// Returned ascending.
std::pair<double, double> shifted_roots(const BlockParams& b) {
    const double delta = b.eps + b.v2 - b.v1;
    const double s = std::sqrt(delta * delta + 12.0 * b.g * b.g);
    const double big = -0.5 * (delta + std::copysign(s, delta));
    const double small = big != 0.0 ? -3.0 * b.g * b.g / big : 0.0;
    return std::minmax(big, small);
}

bool lexicographic_less(cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

}  // namespace

BlockParams derived_block(int n, const ModelParams& params) {
    if (!params.symmetric()) {
        throw PremiseError("derived_block requires equal couplings and equal detunings");
    }
    if (n < 0 || n > params.field.M()) {
        throw ValidationError(fmt::format("photon block n = {} outside [0, {}]", n, params.field.M()));
    }
    const auto& d = params.field.deformation();
    const double qn = q_number(n, d);
    const double radicand = q_number(n + 1, d);
    if (radicand < 0.0) {
        throw NumericalError(fmt::format(
            "negative radicand [{}]_q = {} in the coupling; this q-number convention is unphysical here",
            n + 1, radicand));
    }
    BlockParams b;
    b.n = n;
    b.v1 = params.chi * qn * q_number(n - 1, d);
    b.v2 = params.chi * qn * radicand;
    b.g = 0.5 * params.lambda[0] * std::sqrt(radicand);
    b.eps = params.epsilon(0);
    return b;
}

RootPair characteristic_roots(const BlockParams& block) {
    const auto [y1, y2] = shifted_roots(block);
    RootPair r{cplx{y1 - block.v1}, cplx{y2 - block.v1}};
    if (lexicographic_less(r.X2, r.X1)) std::swap(r.X1, r.X2);
    return r;
}

bool roots_degenerate(const RootPair& roots) {
    const double scale = std::max({1.0, std::abs(roots.X1), std::abs(roots.X2)});
    return std::abs(roots.X1 - roots.X2) < 1e-9 * scale;
}

namespace {

ModeCoefficients coefficients_for(const BlockParams& block, cplx th1, cplx th2) {
    if (roots_degenerate(characteristic_roots(block))) {
        throw NumericalError(fmt::format("block n = {} has degenerate roots; use the confluent solution", block.n));
    }
    const auto [y1, y2] = shifted_roots(block);
    const double g = block.g;

    ModeCoefficients c;
    c.B1 = (-y2 * th1 - 3.0 * g * th2) / (y1 - y2);
    c.B2 = (-y1 * th1 - 3.0 * g * th2) / (y2 - y1);
    if (g != 0.0) {
        c.C1 = -y1 * c.B1 / (3.0 * g);
        c.C2 = -y2 * c.B2 / (3.0 * g);
    } else {
        // Decoupled: the lower leg evolves alone on the root Y = -delta (Y != 0).
        const bool first_is_lower = y1 != 0.0;
        c.C1 = first_is_lower ? th2 : cplx{};
        c.C2 = first_is_lower ? cplx{} : th2;
    }
    return c;
}

}  // namespace

ModeCoefficients mode_coefficients(const BlockParams& block, const AtomInit& init) {
    return coefficients_for(block, init[0], init[1]);
}

BlockSolution::BlockSolution(const BlockParams& block, cplx theta1, cplx theta2)
    : block_(block), roots_(characteristic_roots(block)) {
    confluent_ = roots_degenerate(roots_);
    if (!confluent_) {
        // characteristic_roots and shifted_roots share the same ascending order.
        coeff_ = coefficients_for(block, theta1, theta2);
        return;
    }
    const double g = block.g;
    const double delta = block.eps + block.v2 - block.v1;
    X_ = 0.5 * (roots_.X1 + roots_.X2);
    const cplx y = X_ + block.v1;
    B_ = theta1;
    D_ = -I * (y * theta1 + 3.0 * g * theta2);
    E_ = theta2;
    F_ = -I * (g * theta1 + (delta + y) * theta2);
}

std::pair<cplx, cplx> BlockSolution::amplitudes(double T) const {
    const double eps = block_.eps;
    if (confluent_) {
        const cplx phase = std::exp(I * X_ * T);
        return {(B_ + D_ * T) * phase, (E_ + F_ * T) * phase * std::polar(1.0, eps * T)};
    }
    const double x1 = roots_.X1.real();
    const double x2 = roots_.X2.real();
    const cplx psi1 = coeff_.B1 * std::polar(1.0, x1 * T) + coeff_.B2 * std::polar(1.0, x2 * T);
    const cplx psi2 = coeff_.C1 * std::polar(1.0, (x1 + eps) * T) + coeff_.C2 * std::polar(1.0, (x2 + eps) * T);
    return {psi1, psi2};
}

bool closed_form_applicable(const ModelParams& params, const AtomInit& init) {
    return params.symmetric() && init.lower_levels_equal();
}

ClosedFormEvolution::ClosedFormEvolution(const ModelParams& params, const AtomInit& init)
    : params_(params), init_(init), field_(binomial_state(params.field)) {
    if (!params.symmetric()) {
        throw PremiseError("closed form requires lambda_1 = lambda_2 = lambda_3 and Delta_1 = Delta_2 = Delta_3");
    }
    if (!init.lower_levels_equal()) {
        throw PremiseError("closed form requires theta_2 = theta_3 = theta_4");
    }
    const int M = params.field.M();
    blocks_.reserve(static_cast<std::size_t>(M) + 1);
    for (int n = 0; n <= M; ++n) {
        blocks_.emplace_back(derived_block(n, params), init[0], init[1]);
    }
}

int ClosedFormEvolution::confluent_blocks() const {
    return static_cast<int>(std::count_if(blocks_.begin(), blocks_.end(),
                                          [](const BlockSolution& b) { return b.confluent(); }));
}

JointState ClosedFormEvolution::state(double T) const {
    const int M = params_.field.M();
    JointState s(M);
    for (int n = 0; n <= M; ++n) {
        const double beta = field_.beta[static_cast<std::size_t>(n)];
        const auto [psi1, psi2] = blocks_[static_cast<std::size_t>(n)].amplitudes(T);
        s(n, 1) = beta * psi1;
        for (int level = 2; level <= 4; ++level) s(n + 1, level) = beta * psi2;
    }
    return s;
}

JointState evolve_closed_form(double T, const ModelParams& params, const AtomInit& init) {
    return ClosedFormEvolution(params, init).state(T);
}

}  // namespace qtripod
