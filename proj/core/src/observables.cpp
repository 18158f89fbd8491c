#include "qtripod/observables.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "qtripod/error.hpp"

namespace qtripod {

namespace {

void require_normalized(const JointState& state) {
    const double n2 = state.amplitudes().squaredNorm();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-6) {
        throw ValidationError(fmt::format("joint state is not normalised (||Psi||^2 = {:.12g})", n2));
    }
}

}  // namespace

DensityDiagnostics diagnose(const DensityMatrix& rho) {
    const Eigen::MatrixXcd& m = rho.entries();
    DensityDiagnostics d;
    d.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(m.trace() - cplx{1.0});
    const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    return d;
}

DensityMatrix reduce_atom(const JointState& state) {
    require_normalized(state);
    const auto psi = state.as_matrix();  // rows: photons, cols: levels
    // rho_A(i, j) = sum_n psi(n, i) conj(psi(n, j))
    Eigen::MatrixXcd rho = psi.transpose() * psi.conjugate();
    return {std::move(rho), Subsystem::Atom};
}

DensityMatrix reduce_field(const JointState& state) {
    require_normalized(state);
    const auto psi = state.as_matrix();
    // rho_F(n, m) = sum_i psi(n, i) conj(psi(m, i))
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    return {std::move(rho), Subsystem::Field};
}

double purity(const DensityMatrix& rho) {
    // Tr rho^2 = sum_ij rho_ij rho_ji
    return (rho.entries().cwiseProduct(rho.entries().transpose())).sum().real();
}

double linear_entropy(const JointState& state) { return 1.0 - purity(reduce_field(state)); }

double fidelity_exact(const JointState& evolved, const JointState& initial) {
    require_normalized(evolved);
    require_normalized(initial);
    if (evolved.M() != initial.M()) {
        throw ValidationError("fidelity between states with different photon cutoffs");
    }
    return std::norm(evolved.amplitudes().dot(initial.amplitudes()));
}

double fidelity_paper_literal(double T, const ClosedFormEvolution& evolution) {
    const auto& beta = evolution.field_state().beta;
    const cplx th1 = evolution.init()[0];
    const cplx th2 = evolution.init()[1];
    const std::size_t M = beta.size() - 1;
    cplx sum{};
    for (std::size_t n = 0; n <= M; ++n) {
        const auto [psi1, psi2] = evolution.blocks()[n].amplitudes(T);
        const double beta_next = n + 1 <= M ? beta[n + 1] : 0.0;
        sum += beta[n] * th1 * std::conj(psi1) + 3.0 * beta_next * th2 * std::conj(psi2);
    }
    return std::norm(sum);
}

double fidelity_paper_literal(double T, const ModelParams& params, const AtomInit& init) {
    return fidelity_paper_literal(T, ClosedFormEvolution(params, init));
}

}  // namespace qtripod
