#pragma once

// Embedded adaptive Runge-Kutta integration (Dormand-Prince 5(4), FSAL)
// over fixed-size complex state vectors, with cubic-Hermite dense output.
// Suited to the non-stiff oscillatory dynamics of this toolkit where a
// run covers ~1e3-1e4 carrier radians.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "cfpulse/complex_freq.hpp"
#include "cfpulse/errors.hpp"

namespace cfpulse::ode {

template <std::size_t N>
using State = std::array<cplx, N>;

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, const State<N>& k) {
    State<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + h * k[i];
    return r;
}

} // namespace detail

/// One accepted step of the integration: state and derivative at its end.
template <std::size_t N>
struct StepRecord {
    double t;
    State<N> y;
    State<N> f;
};

template <std::size_t N>
struct Solution {
    std::vector<StepRecord<N>> steps; ///< includes the initial point
    std::size_t n_accepted = 0;
    std::size_t n_rejected = 0;

    /// Cubic Hermite interpolation between accepted steps.
    [[nodiscard]] State<N> at(double t) const {
        const auto& s = steps;
        if (t <= s.front().t) return s.front().y;
        if (t >= s.back().t) return s.back().y;
        std::size_t lo = 0, hi = s.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (s[mid].t <= t) lo = mid; else hi = mid;
        }
        const double h = s[hi].t - s[lo].t;
        const double x = (t - s[lo].t) / h;
        const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
        const double h10 = x * (1 - x) * (1 - x);
        const double h01 = x * x * (3 - 2 * x);
        const double h11 = x * x * (x - 1);
        State<N> out;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = h00 * s[lo].y[i] + h10 * h * s[lo].f[i] + h01 * s[hi].y[i] + h11 * h * s[hi].f[i];
        return out;
    }
};

/// Integrate dy/dt = f(t, y) from t0 to t1 at mixed tolerance `tol`
/// (used as both rtol and atol on the natural O(1) state scales here).
/// Throws stiffness_error if the step size underflows.
template <std::size_t N, typename F>
Solution<N> integrate(F&& f, State<N> y0, double t0, double t1, double tol,
                      double first_step = 0.0) {
    // Dormand-Prince 5(4) tableau
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
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

    Solution<N> sol;
    const double rtol = tol, atol = tol;
    const double span = t1 - t0;
    double h = (first_step > 0.0) ? first_step : span * 1e-6;
    const double h_min = span * 1e-14;

    State<N> y = y0;
    State<N> k1;
    f(t0, y, k1);
    sol.steps.push_back({t0, y, k1});

    double t = t0;
    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        State<N> k2, k3, k4, k5, k6, k7, ytmp, ynew;
        ytmp = detail::axpy(y, h * a21, k1);
        f(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, ynew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const cplx ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                 e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err = std::max(err, std::abs(ei) / sc);
        }

        if (err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;
            sol.steps.push_back({t, y, k1});
            ++sol.n_accepted;
            const double grow = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::min(5.0, std::max(0.2, grow));
        } else {
            ++sol.n_rejected;
            h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
        }
        if (h < h_min)
            throw stiffness_error("ode::integrate: step size underflow at t", t);
    }
    return sol;
}

} // namespace cfpulse::ode
