#pragma once

// Linearized frequency-domain system of the coupled-mode model: under the
// weak-excitation approximation and the e^{-i w t} ansatz the amplitudes
// v = (A, S1, S2, S3) obey M(w) v = s with s = (k_r b0, 0, 0, 0).
//
// In the internal sign convention (undriven amplitudes decay while
// rotating as e^{-i w0 t}):
//   alpha(w) = i(w_c - w) + 1/tau_r + 1/tau_i
//   D_j(w)   = i(w_aj - w) + Gamma_j/2
//   M = [[alpha, i g^T], [i g, diag(D)]]
// which satisfies det M = (prod D) * (alpha + sum_j g_j^2 / D_j).

#include <array>
#include <complex>

#include "cfpulse/complex_freq.hpp"
#include "cfpulse/linalg.hpp"
#include "cfpulse/params.hpp"
#include "cfpulse/polynomial.hpp"

namespace cfpulse {

class LinearSystem {
public:
    explicit LinearSystem(const BlochParams& p) : p_(p) {}

    [[nodiscard]] const BlochParams& params() const noexcept { return p_; }

    [[nodiscard]] cplx alpha(cplx w) const {
        return cplx{0.0, 1.0} * (p_.omega_c() - w) + p_.inv_tau_r() + p_.inv_tau_i();
    }

    [[nodiscard]] cplx d_entry(int j, cplx w) const {
        return cplx{0.0, 1.0} * (p_.omega_a()[j] - w) + 0.5 * p_.gamma_s()[j];
    }

    [[nodiscard]] linalg::Mat<cplx, 4> matrix(cplx w) const {
        linalg::Mat<cplx, 4> m{};
        m[0][0] = alpha(w);
        for (int j = 0; j < 3; ++j) {
            const cplx ig = cplx{0.0, 1.0} * p_.g()[j];
            m[0][j + 1] = ig;
            m[j + 1][0] = ig;
            m[j + 1][j + 1] = d_entry(j, w);
        }
        return m;
    }

    /// det M via the Schur complement of the diagonal qubit block.
    [[nodiscard]] cplx det_schur(cplx w) const {
        const cplx a = alpha(w);
        std::array<cplx, 3> d{};
        for (int j = 0; j < 3; ++j) d[j] = d_entry(j, w);
        cplx det = a * d[0] * d[1] * d[2];
        det += p_.g()[0] * p_.g()[0] * d[1] * d[2];
        det += p_.g()[1] * p_.g()[1] * d[0] * d[2];
        det += p_.g()[2] * p_.g()[2] * d[0] * d[1];
        return det;
    }

    /// det M by direct elimination of the full 4x4; independent of the
    /// Schur route and used to cross-check it.
    [[nodiscard]] cplx det_direct(cplx w) const { return linalg::det(matrix(w)); }

    /// Magnitude yardstick for det comparisons at w.
    [[nodiscard]] double det_scale(cplx w) const {
        const double a = std::abs(alpha(w));
        std::array<double, 3> d{};
        for (int j = 0; j < 3; ++j) d[j] = std::abs(d_entry(j, w));
        double s = a * d[0] * d[1] * d[2];
        s += p_.g()[0] * p_.g()[0] * d[1] * d[2];
        s += p_.g()[1] * p_.g()[1] * d[0] * d[2];
        s += p_.g()[2] * p_.g()[2] * d[0] * d[1];
        return s;
    }

    /// Amplitudes (A, S1, S2, S3) under drive amplitude b0 (Cramer/LU).
    [[nodiscard]] linalg::Vec<cplx, 4> amplitudes(cplx w, cplx b0) const {
        linalg::Vec<cplx, 4> s{};
        s[0] = p_.k_r() * b0;
        return linalg::solve(matrix(w), s);
    }

    /// Denominator polynomial det M(w), degree 4 in w (ascending coeffs).
    [[nodiscard]] Polynomial det_poly() const {
        const cplx mi{0.0, -1.0};
        Polynomial a({cplx{0.0, 1.0} * p_.omega_c() + p_.inv_tau_r() + p_.inv_tau_i(), mi});
        std::array<Polynomial, 3> d;
        for (int j = 0; j < 3; ++j)
            d[j] = Polynomial({cplx{0.0, 1.0} * p_.omega_a()[j] + 0.5 * p_.gamma_s()[j], mi});
        Polynomial det = a * d[0] * d[1] * d[2];
        det = det + d[1] * d[2] * (p_.g()[0] * p_.g()[0]);
        det = det + d[0] * d[2] * (p_.g()[1] * p_.g()[1]);
        det = det + d[0] * d[1] * (p_.g()[2] * p_.g()[2]);
        return det;
    }

    /// Product of the qubit factors D_j(w) as a degree-3 polynomial.
    [[nodiscard]] Polynomial qubit_product_poly() const {
        const cplx mi{0.0, -1.0};
        Polynomial prod({1.0});
        for (int j = 0; j < 3; ++j)
            prod = prod * Polynomial({cplx{0.0, 1.0} * p_.omega_a()[j] + 0.5 * p_.gamma_s()[j], mi});
        return prod;
    }

private:
    BlochParams p_;
};

} // namespace cfpulse
