#pragma once

// Reduced density matrices, fidelity and linear entropy of joint states.

#include <Eigen/Core>

#include "qtripod/dynamics.hpp"
#include "qtripod/model.hpp"

namespace qtripod {

enum class Subsystem { Atom, Field };

/// Reduced density matrix of one subsystem.
class DensityMatrix {
public:
    DensityMatrix(Eigen::MatrixXcd entries, Subsystem subsystem)
        : entries_(std::move(entries)), subsystem_(subsystem) {}

    const Eigen::MatrixXcd& entries() const { return entries_; }
    cplx operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
    Eigen::Index dim() const { return entries_.rows(); }
    Subsystem subsystem() const { return subsystem_; }

private:
    Eigen::MatrixXcd entries_;
    Subsystem subsystem_;
};

struct DensityDiagnostics {
    double hermiticity_error = 0.0;  ///< max |rho - rho^dagger|
    double trace_error = 0.0;        ///< |Tr rho - 1|
    double min_eigenvalue = 0.0;

    bool valid(double herm_tol = 1e-12, double trace_tol = 1e-12, double eig_floor = -1e-10) const {
        return hermiticity_error <= herm_tol && trace_error <= trace_tol && min_eigenvalue >= eig_floor;
    }
};

/// Hermiticity, trace and spectrum of rho (self-adjoint eigensolver on the Hermitian part).
DensityDiagnostics diagnose(const DensityMatrix& rho);

/// Partial trace over the photon index; 4x4. Rejects states with | ||Psi||^2 - 1 | > 1e-6.
DensityMatrix reduce_atom(const JointState& state);

/// Partial trace over the atomic index; (M+2)x(M+2).
DensityMatrix reduce_field(const JointState& state);

/// Tr rho^2.
double purity(const DensityMatrix& rho);

/// LE = 1 - Tr rho_F^2.
double linear_entropy(const JointState& state);

/// |<Psi(t)|Psi(0)>|^2.
double fidelity_exact(const JointState& evolved, const JointState& initial);

/// |sum_n [beta_n theta1 psi1*(n,T) + 3 beta_{n+1} theta2 psi2*(n+1,T)]|^2 with beta_{M+1} = 0.
/// Literal block-sum form kept for comparison with reference curves; it is not an
/// overlap and need not start at 1.
double fidelity_paper_literal(double T, const ClosedFormEvolution& evolution);
double fidelity_paper_literal(double T, const ModelParams& params, const AtomInit& init);

}  // namespace qtripod
