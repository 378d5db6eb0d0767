#pragma once

// Small dense linear algebra: LU with partial pivoting (complex), a cyclic
// Jacobi eigensolver for Hermitian matrices, and Cholesky for real SPD
// matrices. Everything here targets the N <= 9 systems of this toolkit.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "cfpulse/errors.hpp"

namespace cfpulse::linalg {

using cplx = std::complex<double>;

/// Row-major dense matrix of fixed small size.
template <typename T, std::size_t N>
using Mat = std::array<std::array<T, N>, N>;

template <typename T, std::size_t N>
using Vec = std::array<T, N>;

/// In-place LU factorization with partial pivoting; returns det(A).
/// A is overwritten; perm records the pivot rows.
template <std::size_t N>
cplx lu_factor(Mat<cplx, N>& a, std::array<std::size_t, N>& perm) {
    cplx det = 1.0;
    for (std::size_t i = 0; i < N; ++i) perm[i] = i;
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t piv = k;
        double best = std::abs(a[k][k]);
        for (std::size_t i = k + 1; i < N; ++i) {
            if (std::abs(a[i][k]) > best) { best = std::abs(a[i][k]); piv = i; }
        }
        if (piv != k) {
            std::swap(a[piv], a[k]);
            std::swap(perm[piv], perm[k]);
            det = -det;
        }
        det *= a[k][k];
        if (a[k][k] == cplx{0.0, 0.0}) return det;
        for (std::size_t i = k + 1; i < N; ++i) {
            a[i][k] /= a[k][k];
            for (std::size_t j = k + 1; j < N; ++j) a[i][j] -= a[i][k] * a[k][j];
        }
    }
    return det;
}

template <std::size_t N>
Vec<cplx, N> lu_solve(const Mat<cplx, N>& lu, const std::array<std::size_t, N>& perm,
                      const Vec<cplx, N>& b) {
    Vec<cplx, N> x{};
    for (std::size_t i = 0; i < N; ++i) x[i] = b[perm[i]];
    for (std::size_t i = 1; i < N; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= lu[i][j] * x[j];
    for (std::size_t i = N; i-- > 0;) {
        for (std::size_t j = i + 1; j < N; ++j) x[i] -= lu[i][j] * x[j];
        x[i] /= lu[i][i];
    }
    return x;
}

/// Solve A x = b by LU; throws on an exactly singular pivot.
template <std::size_t N>
Vec<cplx, N> solve(Mat<cplx, N> a, const Vec<cplx, N>& b) {
    std::array<std::size_t, N> perm{};
    lu_factor(a, perm);
    for (std::size_t k = 0; k < N; ++k)
        if (a[k][k] == cplx{0.0, 0.0}) throw numerical_error("linalg::solve: singular matrix");
    return lu_solve(a, perm, b);
}

/// det(A) via LU elimination.
template <std::size_t N>
cplx det(Mat<cplx, N> a) {
    std::array<std::size_t, N> perm{};
    return lu_factor(a, perm);
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns ascending eigenvalues; V columns are eigenvectors.
template <std::size_t N>
void hermitian_eig(Mat<cplx, N> a, Vec<double, N>& eigvals, Mat<cplx, N>& v) {
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) v[i][j] = (i == j) ? 1.0 : 0.0;

    auto off = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) s += std::norm(a[i][j]);
        return s;
    };
    double scale = 0.0;
    for (std::size_t i = 0; i < N; ++i) scale += std::abs(a[i][i].real());
    scale = std::max(scale, 1e-300);

    for (int sweep = 0; sweep < 100 && off() > 1e-30 * scale * scale; ++sweep) {
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                cplx apq = a[p][q];
                if (std::abs(apq) == 0.0) continue;
                double app = a[p][p].real(), aqq = a[q][q].real();
                // 2x2 Hermitian rotation zeroing [[app, apq],[conj(apq), aqq]]
                double m = std::abs(apq);
                cplx phase = apq / m;
                double tau = (aqq - app) / (2.0 * m);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                cplx s = (t * c) * phase;
                // apply G^H A G with G = [[c, s],[-conj(s), c]]
                for (std::size_t k = 0; k < N; ++k) {
                    cplx akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - std::conj(s) * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    cplx apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = std::conj(s) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    cplx vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - std::conj(s) * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    // sort ascending by eigenvalue
    std::array<std::size_t, N> idx{};
    for (std::size_t i = 0; i < N; ++i) idx[i] = i;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            if (a[idx[j]][idx[j]].real() < a[idx[i]][idx[i]].real()) std::swap(idx[i], idx[j]);
    Mat<cplx, N> vs = v;
    for (std::size_t i = 0; i < N; ++i) {
        eigvals[i] = a[idx[i]][idx[i]].real();
        for (std::size_t k = 0; k < N; ++k) v[k][i] = vs[k][idx[i]];
    }
}

/// Singular values (ascending) and the right-singular vector of the smallest
/// singular value, from the Hermitian eigenproblem of A^H A.
template <std::size_t N>
void smallest_singular(const Mat<cplx, N>& a, Vec<double, N>& sigma, Vec<cplx, N>& null_vec) {
    Mat<cplx, N> ata{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < N; ++k) s += std::conj(a[k][i]) * a[k][j];
            ata[i][j] = s;
        }
    Vec<double, N> ev{};
    Mat<cplx, N> v{};
    hermitian_eig(ata, ev, v);
    for (std::size_t i = 0; i < N; ++i) {
        sigma[i] = std::sqrt(std::max(ev[i], 0.0));
        null_vec[i] = v[i][0];
    }
}

/// Cholesky factor L (lower) of a real SPD matrix; throws if not PD.
template <std::size_t N>
Mat<double, N> cholesky(const Mat<double, N>& a) {
    Mat<double, N> l{};
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (s <= 0.0) throw numerical_error("cholesky: matrix not positive definite");
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return l;
}

/// Generalized symmetric eigenvalues of G v = lambda C v with C SPD,
/// via Cholesky reduction to a standard Hermitian problem. Ascending.
template <std::size_t N>
Vec<double, N> generalized_eigvals(const Mat<double, N>& g, const Mat<double, N>& c) {
    Mat<double, N> l = cholesky(c);
    // B = L^-1 G L^-T
    Mat<double, N> y{};
    // solve L Y = G  (column-wise forward substitution)
    for (std::size_t col = 0; col < N; ++col) {
        for (std::size_t i = 0; i < N; ++i) {
            double s = g[i][col];
            for (std::size_t k = 0; k < i; ++k) s -= l[i][k] * y[k][col];
            y[i][col] = s / l[i][i];
        }
    }
    // B = Y L^-T: solve L B^T = Y^T, i.e. rows of B by forward substitution
    Mat<double, N> b{};
    for (std::size_t row = 0; row < N; ++row) {
        for (std::size_t i = 0; i < N; ++i) {
            double s = y[row][i];
            for (std::size_t k = 0; k < i; ++k) s -= l[i][k] * b[row][k];
            b[row][i] = s / l[i][i];
        }
    }
    Mat<cplx, N> bc{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) bc[i][j] = 0.5 * (b[i][j] + b[j][i]);
    Vec<double, N> ev{};
    Mat<cplx, N> v{};
    hermitian_eig(bc, ev, v);
    return ev;
}

} // namespace cfpulse::linalg
