#pragma once

// Closed-form evolution of the symmetric tripod model. With equal couplings and
// detunings the three lower legs share one amplitude, and each photon block
// {|n,1>, |n+1,2>, |n+1,3>, |n+1,4>} reduces to an effective two-level problem
//
//   i d/dt psi1 = v1 psi1 + 3 g e^{-i eps t} psi2
//   i d/dt psi2 = g e^{+i eps t} psi1 + v2 psi2
//
// solved by psi1 = sum_j B_j e^{i X_j t}, psi2 = sum_j C_j e^{i (X_j + eps) t}.

#include <utility>
#include <vector>

#include "qtripod/model.hpp"

namespace qtripod {

/// Per-block constants of the reduced system.
struct BlockParams {
    int n = 0;
    double v1 = 0.0;   ///< chi [n][n-1]
    double v2 = 0.0;   ///< chi [n][n+1]
    double g = 0.0;    ///< (lambda/2) sqrt([n+1])
    double eps = 0.0;  ///< Delta - mu

    double a1() const { return eps + v1 + v2; }
    double a2() const { return v1 * (eps + v2) - 3.0 * g * g; }
};

/// Requires params.symmetric(). Throws NumericalError if [n+1]_q < 0.
BlockParams derived_block(int n, const ModelParams& params);

struct RootPair {
    cplx X1;
    cplx X2;
};

/// Roots of X^2 + a1 X + a2 = 0, ordered by real part then imaginary part.
/// Real for real parameters: the discriminant is (eps + v2 - v1)^2 + 12 g^2.
RootPair characteristic_roots(const BlockParams& block);

/// |X1 - X2| < 1e-9 max(1, |X1|, |X2|).
bool roots_degenerate(const RootPair& roots);

struct ModeCoefficients {
    cplx B1, B2;  ///< psi1 weights
    cplx C1, C2;  ///< psi2 weights
};

/// B_j = [-(X_k + v1) theta1 - 3 g theta2] / (X_j - X_k) and C_j = -(X_j + v1) B_j / (3 g).
/// For g = 0 the lower leg decouples and C_j is assigned from theta2 directly.
/// Throws NumericalError on degenerate roots; BlockSolution routes those to the confluent form.
ModeCoefficients mode_coefficients(const BlockParams& block, const AtomInit& init);

/// Closed-form solution of one photon block.
class BlockSolution {
public:
    BlockSolution(const BlockParams& block, cplx theta1, cplx theta2);

    const BlockParams& block() const { return block_; }
    const RootPair& roots() const { return roots_; }
    bool confluent() const { return confluent_; }
    /// Valid only when !confluent().
    const ModeCoefficients& coefficients() const { return coeff_; }

    /// (psi1(n, T), psi2(n+1, T)).
    std::pair<cplx, cplx> amplitudes(double T) const;

private:
    BlockParams block_;
    RootPair roots_;
    bool confluent_ = false;
    ModeCoefficients coeff_{};
    // Confluent representation: psi1 = (B + D t) e^{iXt}, psi2 = (E + F t) e^{i(X+eps)t}.
    cplx X_{}, B_{}, D_{}, E_{}, F_{};
};

/// Closed-form engine for a full run: binomial field, one BlockSolution per n = 0..M.
class ClosedFormEvolution {
public:
    /// Throws PremiseError unless params.symmetric() and init.lower_levels_equal().
    ClosedFormEvolution(const ModelParams& params, const AtomInit& init);

    const ModelParams& params() const { return params_; }
    const AtomInit& init() const { return init_; }
    const BinomialState& field_state() const { return field_; }
    const std::vector<BlockSolution>& blocks() const { return blocks_; }
    int confluent_blocks() const;

    /// Joint state at scaled time T. Block sums are assembled in ascending n.
    JointState state(double T) const;

private:
    ModelParams params_;
    AtomInit init_;
    BinomialState field_;
    std::vector<BlockSolution> blocks_;
};

JointState evolve_closed_form(double T, const ModelParams& params, const AtomInit& init);

/// True when the closed form applies; otherwise the caller must use the ODE engine.
bool closed_form_applicable(const ModelParams& params, const AtomInit& init);

}  // namespace qtripod
