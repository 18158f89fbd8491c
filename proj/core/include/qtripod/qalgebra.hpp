#pragma once

// q-deformed number theory and the q-deformed binomial field state.

#include <vector>

namespace qtripod {

enum class QConvention {
    Standard,      ///< [n]_q = (1 - q^n) / (1 - q)
    PaperLiteral,  ///< [n]_q = (1 - q^-n) / (1 - q), negative for 0 < q < 1
};

/// Deformation parameter q in (0, 1] plus the q-number convention.
class DeformationSpec {
public:
    explicit DeformationSpec(double q = 0.9, QConvention convention = QConvention::Standard);

    double q() const { return q_; }
    QConvention convention() const { return convention_; }
    bool classical() const { return q_ == 1.0; }

private:
    double q_;
    QConvention convention_;
};

/// Binomial order M (also the photon cutoff), binomial parameter tau in (0, 1), and deformation.
class FieldSpec {
public:
    FieldSpec(int M, double tau, DeformationSpec deformation = DeformationSpec{});

    int M() const { return M_; }
    double tau() const { return tau_; }
    const DeformationSpec& deformation() const { return deformation_; }

private:
    int M_;
    double tau_;
    DeformationSpec deformation_;
};

/// [n]_q. Any n <= 0 yields 0 (the guard used by the Kerr diagonal); q = 1 yields n.
double q_number(int n, const DeformationSpec& d);

/// [n]_q! = [n]_q [n-1]_q ... [1]_q, with [0]_q! = 1.
double q_factorial(int n, const DeformationSpec& d);

/// Gaussian binomial coefficient [M n]_q, evaluated as a ratio of cancelled q-number
/// factors so that no intermediate factorial is formed.
double q_binomial_coeff(int M, int n, const DeformationSpec& d);

/// (1 - tau)_q^m = prod_{k=0}^{m-1} (1 - q^k tau).
double q_one_minus_pow(double tau, int m, const DeformationSpec& d);

/// b(n; M, tau) = [M n]_q tau^n (1 - tau)_q^{M-n}.
double binomial_pmf(int n, const FieldSpec& f);

/// Coefficients beta_n = sqrt(b(n; M, tau)) for n = 0..M, normalised to unit length.
struct BinomialState {
    std::vector<double> beta;
    /// sum_n b(n; M, tau) before normalisation.
    double raw_pmf_sum = 1.0;

    double pmf_deviation() const { return raw_pmf_sum - 1.0; }
    /// True when |raw sum - 1| exceeded the 1e-10 reporting threshold.
    bool renormalized() const;
};

BinomialState binomial_state(const FieldSpec& f);

}  // namespace qtripod
