#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include <Eigen/Dense>

#include "vqsim/errors.hpp"

namespace vqsim {

/// Controls for the embedded Dormand-Prince 4(5) stepper. Same error norm,
/// step-size controller, and initial-step heuristic as the widely used
/// adaptive RK45 implementations, so the default tolerances mean the same
/// thing here.
struct OdeOptions {
    double rel_tol = 1e-3;
    double abs_tol = 1e-6;
    double max_step = std::numeric_limits<double>::infinity();
    double min_step = 1e-12;
    /// Deterministic stall guard; exceeding it reports RhsBudgetExhausted.
    long max_rhs_evaluations = 200000;
};

enum class OdeStatus { Ok, StepSizeUnderflow, RhsBudgetExhausted };

template <typename Vec>
struct OdeOutcome {
    OdeStatus status = OdeStatus::Ok;
    long accepted_steps = 0;
    long rhs_evaluations = 0;
    double t_reached = 0.0;
    Vec y;
};

namespace detail {

template <typename Vec>
double scaled_rms_norm(const Vec& delta, const Vec& y0, const Vec& y1, double rtol, double atol) {
    if (delta.size() == 0)
        return 0.0;
    const auto scale = (atol + rtol * y0.array().abs().max(y1.array().abs())).eval();
    return std::sqrt((delta.array().abs() / scale).square().mean());
}

template <typename Vec>
double rms_over_scale(const Vec& v, const Eigen::ArrayXd& scale) {
    if (v.size() == 0)
        return 0.0;
    return std::sqrt((v.array().abs() / scale).square().mean());
}

} // namespace detail

/**
 * Integrates y' = rhs(t, y) from t0 to t1 with adaptive step control.
 *
 * The observer is invoked as observer(t, y) once at t0 and after every
 * accepted step. Both calls happen immediately after an rhs evaluation at
 * exactly that (t, y) point (the FSAL stage doubles as the evaluation at
 * the accepted point), so an rhs functor may cache per-evaluation
 * by-products and read them back in the observer.
 */
template <typename Vec, typename Rhs, typename Observer>
OdeOutcome<Vec> integrate_dopri5(Rhs&& rhs, double t0, Vec y0, double t1, const OdeOptions& opt,
                                 Observer&& observer) {
    if (!(opt.rel_tol > 0) || !(opt.abs_tol > 0))
        throw DomainError("integrate_dopri5: tolerances must be strictly positive");
    if (!(t1 > t0))
        throw DomainError("integrate_dopri5: t1 must exceed t0");

    // Dormand-Prince 5(4) tableau with the FSAL property.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double kSafety = 0.9, kMinFactor = 0.2, kMaxFactor = 10.0;
    constexpr double kErrExponent = -0.2; // -(1 / (error_estimator_order + 1))

    OdeOutcome<Vec> out;
    out.y = std::move(y0);
    double t = t0;

    Vec k1 = rhs(t, out.y);
    ++out.rhs_evaluations;
    observer(t, out.y);

    // Initial step size from the local Lipschitz probe (Hairer's rule).
    double h;
    {
        const Eigen::ArrayXd scale = (opt.abs_tol + opt.rel_tol * out.y.array().abs()).eval();
        const double d0 = detail::rms_over_scale(out.y, scale);
        const double d1 = detail::rms_over_scale(k1, scale);
        const double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        const Vec y_probe = out.y + h0 * k1;
        const Vec f_probe = rhs(t + h0, y_probe);
        ++out.rhs_evaluations;
        const double d2 = detail::rms_over_scale<Vec>(f_probe - k1, scale) / h0;
        double h1;
        if (d1 <= 1e-15 && d2 <= 1e-15)
            h1 = std::max(1e-6, h0 * 1e-3);
        else
            h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
        h = std::min(std::min(100 * h0, h1), std::min(opt.max_step, t1 - t0));
    }

    bool previous_rejected = false;
    Vec k2, k3, k4, k5, k6, k7, y_new, err_vec;
    while (t < t1) {
        if (out.rhs_evaluations + 6 > opt.max_rhs_evaluations) {
            out.status = OdeStatus::RhsBudgetExhausted;
            break;
        }
        h = std::min(h, opt.max_step);
        if (!(h >= opt.min_step)) { // negated so a NaN step size also lands here
            out.status = OdeStatus::StepSizeUnderflow;
            break;
        }
        bool last = false;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }

        k2 = rhs(t + c2 * h, out.y + h * (a21 * k1));
        k3 = rhs(t + c3 * h, out.y + h * (a31 * k1 + a32 * k2));
        k4 = rhs(t + c4 * h, out.y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = rhs(t + c5 * h, out.y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = rhs(t + h, out.y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        y_new = out.y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs(t + h, y_new);
        out.rhs_evaluations += 6;

        err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err =
            detail::scaled_rms_norm(err_vec, out.y, y_new, opt.rel_tol, opt.abs_tol);

        if (std::isfinite(err) && err <= 1.0) {
            t = last ? t1 : t + h;
            out.y = std::move(y_new);
            k1 = std::move(k7);
            ++out.accepted_steps;
            observer(t, out.y);
            double factor = (err == 0.0) ? kMaxFactor
                                         : std::min(kMaxFactor, kSafety * std::pow(err, kErrExponent));
            if (previous_rejected)
                factor = std::min(1.0, factor);
            h *= factor;
            previous_rejected = false;
        } else {
            const double factor = std::isfinite(err)
                                      ? std::max(kMinFactor, kSafety * std::pow(err, kErrExponent))
                                      : kMinFactor;
            h *= factor;
            previous_rejected = true;
        }
    }

    out.t_reached = t;
    return out;
}

} // namespace vqsim
