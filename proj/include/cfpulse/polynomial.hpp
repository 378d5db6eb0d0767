#pragma once

// Dense univariate complex polynomials and a simultaneous-iteration
// (Aberth-Ehrlich) root finder. Coefficients are stored ascending, so
// p(z) = c[0] + c[1] z + ... + c[n] z^n.
//
// The finder normalizes to a monic polynomial in a rescaled variable
// (Fujiwara-bound radius) before iterating, then Newton-polishes each
// root on the original polynomial. This keeps SI-unit circuit
// polynomials (coefficients spanning ~80 orders of magnitude) and
// rad/ns coupled-mode polynomials on the same code path.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "cfpulse/complex_freq.hpp"
#include "cfpulse/errors.hpp"

namespace cfpulse {

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> ascending) : c_(std::move(ascending)) { trim(); }

    [[nodiscard]] static Polynomial from_roots(const std::vector<cplx>& roots, cplx leading = 1.0) {
        Polynomial p(std::vector<cplx>{leading});
        for (cplx r : roots) p = p * Polynomial({-r, 1.0});
        return p;
    }

    [[nodiscard]] const std::vector<cplx>& coeffs() const noexcept { return c_; }
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool zero() const noexcept { return c_.empty(); }

    [[nodiscard]] cplx operator()(cplx z) const {
        cplx r = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + *it;
        return r;
    }

    /// Magnitude scale sum |c_k| |z|^k, the natural residual yardstick.
    [[nodiscard]] double scale_at(cplx z) const {
        double az = std::abs(z), zk = 1.0, s = 0.0;
        for (const cplx& ck : c_) { s += std::abs(ck) * zk; zk *= az; }
        return s;
    }

    [[nodiscard]] Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial{};
        std::vector<cplx> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
        return Polynomial(std::move(d));
    }

    [[nodiscard]] Polynomial operator*(const Polynomial& o) const {
        if (zero() || o.zero()) return Polynomial{};
        std::vector<cplx> r(c_.size() + o.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Polynomial(std::move(r));
    }

    [[nodiscard]] Polynomial operator+(const Polynomial& o) const {
        std::vector<cplx> r(std::max(c_.size(), o.c_.size()), 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Polynomial(std::move(r));
    }

    [[nodiscard]] Polynomial operator-(const Polynomial& o) const {
        std::vector<cplx> r(std::max(c_.size(), o.c_.size()), 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return Polynomial(std::move(r));
    }

    [[nodiscard]] Polynomial operator*(cplx f) const {
        std::vector<cplx> r = c_;
        for (cplx& x : r) x *= f;
        return Polynomial(std::move(r));
    }

    /// Substitute z = s*x, returning q(x) = p(s*x).
    [[nodiscard]] Polynomial rescaled(double s) const {
        std::vector<cplx> r = c_;
        double f = 1.0;
        for (std::size_t k = 0; k < r.size(); ++k) { r[k] *= f; f *= s; }
        return Polynomial(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == cplx{0.0, 0.0}) c_.pop_back();
    }
    std::vector<cplx> c_;
};

struct RootResult {
    std::vector<cplx> roots;
    bool converged = false;
    int iterations = 0;
};

namespace detail {

inline cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
    return r;
}

} // namespace detail

/// All complex roots by Aberth-Ehrlich simultaneous iteration followed by
/// per-root Newton polishing. Multiplicities are returned as clustered
/// simple roots. Set `max_iter` generously; convergence is quadratic-ish.
inline RootResult find_roots(const Polynomial& poly, int max_iter = 200) {
    RootResult res;
    std::vector<cplx> c = poly.coeffs();
    if (c.size() <= 1) { res.converged = true; return res; }

    // roots exactly at zero
    std::size_t nz = 0;
    while (nz < c.size() - 1 && c[nz] == cplx{0.0, 0.0}) ++nz;
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(nz));
    for (std::size_t i = 0; i < nz; ++i) res.roots.push_back(0.0);
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) { res.converged = true; return res; }

    // monic
    for (auto& ck : c) ck /= c.back();

    // Fujiwara radius bound, used as the variable rescaling
    double radius = 0.0;
    for (int k = 0; k < n; ++k) {
        double m = std::pow(std::abs(c[k]), 1.0 / (n - k));
        radius = std::max(radius, m);
    }
    radius = (radius > 0.0) ? 2.0 * radius : 1.0;

    // q(x) = p(radius*x)/radius^n, monic with O(1) roots
    std::vector<cplx> q(c.size());
    for (int k = 0; k <= n; ++k) q[k] = c[k] * std::pow(radius, k - n);
    std::vector<cplx> dq(n);
    for (int k = 1; k <= n; ++k) dq[k - 1] = static_cast<double>(k) * q[k];

    // initial guesses on a circle, angular offset breaks symmetry
    std::vector<cplx> x(n);
    for (int k = 0; k < n; ++k) {
        double ang = 2.0 * 3.14159265358979323846 * (k + 0.3531) / n;
        x[k] = 0.9 * cplx{std::cos(ang), std::sin(ang)};
    }

    int it = 0;
    for (; it < max_iter; ++it) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx p = detail::horner(q, x[i]);
            cplx dp = detail::horner(dq, x[i]);
            if (p == cplx{0.0, 0.0}) continue;
            cplx nr = (dp != cplx{0.0, 0.0}) ? p / dp : cplx{1e-3, 1e-3};
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx d = x[i] - x[j];
                if (d == cplx{0.0, 0.0}) d = cplx{1e-14, 1e-14};
                sum += 1.0 / d;
            }
            cplx delta = nr / (1.0 - nr * sum);
            x[i] -= delta;
            moved = std::max(moved, std::abs(delta) / std::max(std::abs(x[i]), 1e-12));
        }
        if (moved < 1e-14) { ++it; break; }
    }
    res.iterations = it;
    res.converged = it < max_iter;

    // Newton polish each root on q, then map back
    for (int i = 0; i < n; ++i) {
        cplx z = x[i];
        for (int k = 0; k < 60; ++k) {
            cplx p = detail::horner(q, z);
            cplx dp = detail::horner(dq, z);
            if (dp == cplx{0.0, 0.0}) break;
            cplx step = p / dp;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::max(std::abs(z), 1e-12)) break;
        }
        res.roots.push_back(z * radius);
    }
    std::sort(res.roots.begin(), res.roots.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return res;
}

/// Newton-polish `z` on `poly` until the residual is below
/// `tol` * (coefficient scale at z); used to refine externally seeded roots.
inline cplx polish_root(const Polynomial& poly, cplx z, double tol = 1e-12, int max_iter = 60) {
    Polynomial d = poly.derivative();
    for (int k = 0; k < max_iter; ++k) {
        cplx p = poly(z);
        if (std::abs(p) <= tol * poly.scale_at(z)) break;
        cplx dp = d(z);
        if (dp == cplx{0.0, 0.0}) break;
        z -= p / dp;
    }
    return z;
}

} // namespace cfpulse
