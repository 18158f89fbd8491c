#include "qtripod/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qtripod/error.hpp"
#include "qtripod/parallel.hpp"

namespace qtripod {

namespace {

constexpr cplx I{0.0, 1.0};

// One tripod leg in the Kerr rotating frame psi1 = e^{-i v1 t} phi1, psi_{r+1} = e^{-i v2 t} phi_{r+1}:
//   i d/dt phi1     = sum_r amp m(t) e^{-i up t}   phi_{r+1}
//   i d/dt phi_{r+1} =       amp m(t) e^{+i down t} phi1
// with m(t) = 1, or 2 cos(mu t) for the unapproximated coupling.
struct Leg {
    double amp = 0.0;
    double up = 0.0;    // interaction-picture frequency plus (v2 - v1)
    double down = 0.0;
};

struct BlockModel {
    double v1 = 0.0;
    double v2 = 0.0;
    std::array<Leg, 3> legs{};
    bool modulated = false;  // m(t) = 2 cos(mu t)
    double mu = 0.0;

    double frequency_scale() const {
        double fmax = 0.0;
        double coupling2 = 0.0;
        for (const auto& leg : legs) {
            fmax = std::max({fmax, std::abs(leg.up), std::abs(leg.down)});
            coupling2 += leg.amp * leg.amp;
        }
        const double mmax = modulated ? 2.0 : 1.0;
        return fmax + (modulated ? std::abs(mu) : 0.0) + mmax * std::sqrt(coupling2);
    }
};

// Interaction-picture phases of each leg, before the Kerr frame shift.
struct LegPhases {
    double up;    // H_{1,r+1} ~ e^{-i up t}
    double down;  // H_{r+1,1} ~ e^{+i down t}
};

LegPhases leg_phases(const ModelParams& p, int r, OracleMode mode) {
    switch (mode) {
        case OracleMode::Reduced4Level:
            return {p.epsilon(r), p.epsilon(r)};
        case OracleMode::PreRWA: {
            const double d = p.delta[static_cast<std::size_t>(r)];
            return {d, d};
        }
        case OracleMode::LiteralPhases:
            // column 1: g1 e^{-i eps1 t}, g2 e^{+i eps2 t}, g3 e^{-i eps3 t}
            return {p.epsilon(r), r == 1 ? p.epsilon(r) : -p.epsilon(r)};
    }
    return {0.0, 0.0};
}

BlockModel block_model(int n, const ModelParams& p, OracleMode mode) {
    const auto& d = p.field.deformation();
    const double qn = q_number(n, d);
    const double radicand = q_number(n + 1, d);
    if (radicand < 0.0) {
        throw NumericalError(fmt::format("negative radicand [{}]_q = {} in the coupling", n + 1, radicand));
    }
    BlockModel b;
    b.v1 = p.chi * qn * q_number(n - 1, d);
    b.v2 = p.chi * qn * radicand;
    b.modulated = mode == OracleMode::PreRWA;
    b.mu = p.mu;
    const double kerr_shift = b.v2 - b.v1;
    for (int r = 0; r < 3; ++r) {
        const auto ph = leg_phases(p, r, mode);
        auto& leg = b.legs[static_cast<std::size_t>(r)];
        leg.amp = 0.5 * p.lambda[static_cast<std::size_t>(r)] * std::sqrt(radicand);
        leg.up = ph.up + kerr_shift;
        leg.down = ph.down + kerr_shift;
    }
    return b;
}

using Vec4 = std::array<cplx, 4>;

struct StageCoupling {
    std::array<cplx, 3> A;  // row 1 entries
    std::array<cplx, 3> B;  // column 1 entries
};

inline Vec4 rhs(const StageCoupling& c, const Vec4& y) {
    return {-I * (c.A[0] * y[1] + c.A[1] * y[2] + c.A[2] * y[3]), -I * (c.B[0] * y[0]), -I * (c.B[1] * y[0]),
            -I * (c.B[2] * y[0])};
}

inline Vec4 axpy(const Vec4& y, double h, const Vec4& k) {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]};
}

void integrate_block(const BlockModel& bm, const Vec4& y0, std::span<const double> grid, double max_step,
                     std::span<BlockAmplitudes> out, std::size_t stride) {
    Vec4 y = y0;
    out[0] = y0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double t0 = grid[k];
        const double span = grid[k + 1] - t0;
        const auto nsteps = static_cast<long>(std::max(1.0, std::ceil(span / max_step - 1e-9)));
        const double h = span / static_cast<double>(nsteps);

        std::array<cplx, 3> wa{}, wb{};
        for (std::size_t r = 0; r < 3; ++r) {
            wa[r] = std::polar(1.0, -bm.legs[r].up * 0.5 * h);
            wb[r] = std::polar(1.0, bm.legs[r].down * 0.5 * h);
        }

        for (long j = 0; j < nsteps; ++j) {
            const double t = t0 + static_cast<double>(j) * h;
            std::array<cplx, 3> ea{}, eb{};
            for (std::size_t r = 0; r < 3; ++r) {
                const auto& leg = bm.legs[r];
                ea[r] = (r > 0 && leg.up == bm.legs[r - 1].up) ? ea[r - 1] : std::polar(1.0, -leg.up * t);
                eb[r] = leg.down == leg.up ? std::conj(ea[r]) : std::polar(1.0, leg.down * t);
            }
            double m0 = 1.0, mh = 1.0, m1 = 1.0;
            if (bm.modulated) {
                m0 = 2.0 * std::cos(bm.mu * t);
                mh = 2.0 * std::cos(bm.mu * (t + 0.5 * h));
                m1 = 2.0 * std::cos(bm.mu * (t + h));
            }
            StageCoupling c0, ch, c1;
            for (std::size_t r = 0; r < 3; ++r) {
                const double amp = bm.legs[r].amp;
                const cplx ah = ea[r] * wa[r];
                const cplx bh = eb[r] * wb[r];
                c0.A[r] = amp * m0 * ea[r];
                c0.B[r] = amp * m0 * eb[r];
                ch.A[r] = amp * mh * ah;
                ch.B[r] = amp * mh * bh;
                c1.A[r] = amp * m1 * ah * wa[r];
                c1.B[r] = amp * m1 * bh * wb[r];
            }
            const Vec4 k1 = rhs(c0, y);
            const Vec4 k2 = rhs(ch, axpy(y, 0.5 * h, k1));
            const Vec4 k3 = rhs(ch, axpy(y, 0.5 * h, k2));
            const Vec4 k4 = rhs(c1, axpy(y, h, k3));
            for (std::size_t i = 0; i < 4; ++i) y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        const double t1 = grid[k + 1];
        const cplx f1 = std::polar(1.0, -bm.v1 * t1);
        const cplx f2 = std::polar(1.0, -bm.v2 * t1);
        out[(k + 1) * stride] = {f1 * y[0], f2 * y[1], f2 * y[2], f2 * y[3]};
    }
}

double squared_norm(const BlockAmplitudes& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return s;
}

}  // namespace

Eigen::Matrix4cd block_generator(int n, double t, const ModelParams& params, OracleMode mode) {
    const BlockModel bm = block_model(n, params, mode);
    const double kerr_shift = bm.v2 - bm.v1;
    const double m = bm.modulated ? 2.0 * std::cos(bm.mu * t) : 1.0;
    Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
    H(0, 0) = bm.v1;
    for (int r = 0; r < 3; ++r) {
        const auto& leg = bm.legs[static_cast<std::size_t>(r)];
        H(r + 1, r + 1) = bm.v2;
        H(0, r + 1) = leg.amp * m * std::polar(1.0, -(leg.up - kerr_shift) * t);
        H(r + 1, 0) = leg.amp * m * std::polar(1.0, (leg.down - kerr_shift) * t);
    }
    return H;
}

JointState OracleTrajectory::state(std::size_t k) const {
    JointState s(M_);
    for (int n = 0; n <= M_; ++n) {
        const double b = beta_[static_cast<std::size_t>(n)];
        const auto& a = amplitudes(k, n);
        s(n, 1) = b * a[0];
        for (int level = 2; level <= 4; ++level) s(n + 1, level) = b * a[static_cast<std::size_t>(level - 1)];
    }
    return s;
}

OracleTrajectory integrate(const ModelParams& params, const AtomInit& init, std::span<const double> grid,
                           const IntegratorOptions& options) {
    if (grid.empty() || grid.front() != 0.0) {
        throw ValidationError("integration grid must start at T = 0");
    }
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw ValidationError(fmt::format("integration grid is not strictly increasing at index {}", k));
        }
    }
    if (!(options.step > 0.0) || !std::isfinite(options.step)) {
        throw ValidationError(fmt::format("integrator step {} must be positive", options.step));
    }

    const int M = params.field.M();
    std::vector<BlockModel> models;
    models.reserve(static_cast<std::size_t>(M) + 1);
    double omega = 0.0;
    for (int n = 0; n <= M; ++n) {
        models.push_back(block_model(n, params, options.mode));
        omega = std::max(omega, models.back().frequency_scale());
    }

    OracleTrajectory traj;
    traj.mode_ = options.mode;
    traj.step_ = options.step;
    traj.frequency_scale_ = omega;
    const double wh = omega * options.step;
    // RK4 stability on the imaginary axis ends at 2 sqrt(2); beyond ~2.5 results are meaningless.
    if (wh > 2.5) {
        throw NumericalError(fmt::format(
            "RK4 step {} is unstable for frequency scale {:.6g} (omega h = {:.3g}); reduce the step",
            options.step, omega, wh));
    }
    traj.error_estimate_ = std::pow(wh, 4) * omega / 120.0;
    traj.step_within_target_ = traj.error_estimate_ <= options.accuracy_target;
    if (!traj.step_within_target_) {
        traj.diagnostic_ = fmt::format(
            "step {} exceeds the accuracy target {:.3g} per unit time (estimated {:.3g}, frequency scale {:.6g})",
            options.step, options.accuracy_target, traj.error_estimate_, omega);
    }

    traj.grid_.assign(grid.begin(), grid.end());
    traj.M_ = M;
    traj.beta_ = binomial_state(params.field).beta;
    const std::size_t nblocks = static_cast<std::size_t>(M) + 1;
    traj.blocks_.resize(grid.size() * nblocks);

    const Vec4 y0 = init.theta();
    parallel_for(nblocks, [&](std::size_t n) {
        std::span<BlockAmplitudes> out(traj.blocks_.data() + n, traj.blocks_.size() - n);
        integrate_block(models[n], y0, grid, options.step, out, nblocks);
    });

    const double norm0 = std::sqrt(squared_norm(y0));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double total = 0.0;
        for (std::size_t n = 0; n < nblocks; ++n) {
            const double s = squared_norm(traj.amplitudes(k, static_cast<int>(n)));
            traj.max_block_norm_drift_ = std::max(traj.max_block_norm_drift_, std::abs(s - norm0 * norm0));
            total += traj.beta_[n] * traj.beta_[n] * s;
        }
        traj.max_norm_drift_ = std::max(traj.max_norm_drift_, std::abs(std::sqrt(total) - norm0));
    }
    return traj;
}

OracleTrajectory integrate_reduced(const ModelParams& params, const AtomInit& init, std::span<const double> grid,
                                   IntegratorOptions options) {
    if (options.mode == OracleMode::PreRWA) options.mode = OracleMode::Reduced4Level;
    return integrate(params, init, grid, options);
}

OracleTrajectory integrate_pre_rwa(const ModelParams& params, const AtomInit& init, std::span<const double> grid,
                                   IntegratorOptions options) {
    options.mode = OracleMode::PreRWA;
    return integrate(params, init, grid, options);
}

}  // namespace qtripod
