#ifndef TRUNCLAP_ODE_HPP
#define TRUNCLAP_ODE_HPP

#include <algorithm>
#include <cmath>
#include <functional>

namespace trunclap {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double first_step = 0.0;  // 0: choose automatically
    double max_step = 0.0;    // 0: unlimited
    // Step floor, relative to max(1, |t|); hitting it aborts the run.
    double min_step_rel = 1e-14;
    long max_steps = 4000000;
};

enum class OdeStatus { done, stopped_by_callback, step_underflow, too_many_steps };

/// One accepted Dormand-Prince step, with end-point derivatives for Hermite
/// dense output between t0 and t1.
struct OdeStep {
    double t0, t1;
    Vec2 y0, y1;
    Vec2 f0, f1;
};

/// Cubic Hermite evaluation inside an accepted step.
inline Vec2 hermite_eval(const OdeStep& s, double t) {
    const double h = s.t1 - s.t0;
    const double th = (t - s.t0) / h;
    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
    const double h10 = th * (1 - th) * (1 - th);
    const double h01 = th * th * (3 - 2 * th);
    const double h11 = th * th * (th - 1);
    return h00 * s.y0 + (h10 * h) * s.f0 + h01 * s.y1 + (h11 * h) * s.f1;
}

/// Adaptive embedded Dormand-Prince 5(4) for 2-dimensional systems.
///
/// rhs(t, y) -> dy/dt. on_step is called after every accepted step and may
/// return false to stop the run. Integration runs from t0 to t1 in either
/// direction.
template <class Rhs, class OnStep>
OdeStatus integrate_dp54(Rhs&& rhs, double t0, Vec2 y0, double t1,
                         const OdeOptions& opt, OnStep&& on_step) {
    // Butcher tableau (Dormand & Prince 1980), FSAL.
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    if (span == 0.0) return OdeStatus::done;

    double t = t0;
    Vec2 y = y0;
    Vec2 f = rhs(t, y);

    double h = opt.first_step > 0.0 ? opt.first_step : span / 100.0;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    h = std::min(h, span);

    for (long step = 0; step < opt.max_steps; ++step) {
        const double rem = t1 - t;
        if (dir * rem <= 0.0) return OdeStatus::done;
        const bool last = h >= std::abs(rem);
        const double hs = last ? rem : dir * h;

        const Vec2 k1 = f;
        const Vec2 k2 = rhs(t + 0.2 * hs, y + hs * (a21 * k1));
        const Vec2 k3 = rhs(t + 0.3 * hs, y + hs * (a31 * k1 + a32 * k2));
        const Vec2 k4 = rhs(t + 0.8 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec2 k5 =
            rhs(t + 8.0 / 9.0 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec2 k6 = rhs(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vec2 ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec2 k7 = rhs(t + hs, ynew);

        const Vec2 err =
            hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6) + (hs * e7) * k7;
        const double sx = opt.atol + opt.rtol * std::max(std::abs(y.x), std::abs(ynew.x));
        const double sy = opt.atol + opt.rtol * std::max(std::abs(y.y), std::abs(ynew.y));
        const double err_norm =
            std::sqrt(0.5 * ((err.x / sx) * (err.x / sx) + (err.y / sy) * (err.y / sy)));

        if (err_norm <= 1.0) {
            const double t_next = last ? t1 : t + hs;
            OdeStep acc{t, t_next, y, ynew, k1, k7};
            t = t_next;
            y = ynew;
            f = k7;
            if (!on_step(acc)) return OdeStatus::stopped_by_callback;
            if (last) return OdeStatus::done;
        }

        double factor = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2);
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
        if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
        const double h_floor = opt.min_step_rel * std::max(1.0, std::abs(t));
        if (h < h_floor) return OdeStatus::step_underflow;
    }
    return OdeStatus::too_many_steps;
}

}  // namespace trunclap

#endif
