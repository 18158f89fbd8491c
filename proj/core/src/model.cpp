#include "qtripod/model.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qtripod/error.hpp"

namespace qtripod {

bool ModelParams::symmetric() const {
    return lambda[0] == lambda[1] && lambda[1] == lambda[2] && delta[0] == delta[1] &&
           delta[1] == delta[2];
}

AtomInit::AtomInit(const std::array<cplx, 4>& theta) : theta_(theta) {
    double norm2 = 0.0;
    for (const auto& t : theta_) norm2 += std::norm(t);
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-12) {
        throw ValidationError(fmt::format("atomic amplitudes have squared norm {:.15g}, expected 1", norm2));
    }
}

bool AtomInit::lower_levels_equal() const {
    constexpr double tol = 1e-14;
    return std::abs(theta_[1] - theta_[2]) <= tol && std::abs(theta_[1] - theta_[3]) <= tol;
}

JointState::JointState(int M) : M_(M), amplitudes_(Eigen::VectorXcd::Zero(4 * (M + 2))) {
    if (M < 0) throw ValidationError("JointState requires M >= 0");
}

JointState::JointState(int M, Eigen::VectorXcd amplitudes) : M_(M), amplitudes_(std::move(amplitudes)) {
    if (M < 0) throw ValidationError("JointState requires M >= 0");
    if (amplitudes_.size() != 4 * (M + 2)) {
        throw ValidationError(fmt::format("JointState amplitude vector has length {}, expected {}",
                                          amplitudes_.size(), 4 * (M + 2)));
    }
}

JointState initial_state(const std::vector<double>& beta, const AtomInit& init) {
    const int M = static_cast<int>(beta.size()) - 1;
    JointState state(M);
    for (int n = 0; n <= M; ++n) {
        const double b = beta[static_cast<std::size_t>(n)];
        state(n, 1) = b * init[0];
        for (int level = 2; level <= 4; ++level) state(n + 1, level) = b * init[static_cast<std::size_t>(level - 1)];
    }
    return state;
}

}  // namespace qtripod
