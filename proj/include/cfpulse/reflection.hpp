#pragma once

// One-port reflection of the coupled-mode model, its rational form over a
// common denominator, and spectral feature (pole/zero) extraction and
// labeling.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cfpulse/complex_freq.hpp"
#include "cfpulse/errors.hpp"
#include "cfpulse/linalg.hpp"
#include "cfpulse/linear_system.hpp"
#include "cfpulse/params.hpp"
#include "cfpulse/polynomial.hpp"

namespace cfpulse {

enum class FeatureKind { Pole, Zero };

enum class ModeLabel { Resonator, Qubit1, Qubit2, Qubit3, Mixed };

[[nodiscard]] inline std::string to_string(ModeLabel m) {
    switch (m) {
    case ModeLabel::Resonator: return "resonator";
    case ModeLabel::Qubit1: return "qubit1";
    case ModeLabel::Qubit2: return "qubit2";
    case ModeLabel::Qubit3: return "qubit3";
    case ModeLabel::Mixed: return "mixed";
    }
    return "?";
}

/// Qubit index 0..2 for a qubit label, -1 otherwise.
[[nodiscard]] inline int qubit_index(ModeLabel m) {
    switch (m) {
    case ModeLabel::Qubit1: return 0;
    case ModeLabel::Qubit2: return 1;
    case ModeLabel::Qubit3: return 2;
    default: return -1;
    }
}

struct SpectralFeature {
    FeatureKind kind = FeatureKind::Zero;
    ComplexFreq location;                      ///< model units (rad/ns or rad/s)
    ModeLabel dominant = ModeLabel::Mixed;     ///< filled by label_features
    std::array<double, 4> participation{};     ///< |amplitude| fractions [res/bus, q1, q2, q3]
};

/// r(w) = num(w)/den(w) over the common denominator det M(w).
struct RationalReflection {
    Polynomial num;        ///< -det M + (2/tau_r) * prod_j D_j, degree <= 4
    Polynomial den;        ///< det M, degree 4
    double cancel_tol;     ///< pole-zero cancellation radius (abs, model units)

    [[nodiscard]] cplx eval(cplx w) const { return num(w) / den(w); }
};

/// Reflection coefficient r(w) = -1 + k_r A / b0 with A from Cramer's
/// rule; throws pole_proximity_error within ~1e-12 w_c of a den root.
inline cplx reflection(const BlochParams& p, cplx w) {
    LinearSystem sys(p);
    const cplx det = sys.det_schur(w);
    // |den|/|den'| estimates the distance to the nearest pole
    const Polynomial den = sys.det_poly();
    const cplx dp = den.derivative()(w);
    if (std::abs(det) < 1e-12 * p.omega_c() * std::abs(dp))
        throw pole_proximity_error("reflection: evaluation point is within ~1e-12*w_c of a pole");
    std::array<cplx, 3> d{};
    for (int j = 0; j < 3; ++j) d[j] = sys.d_entry(j, w);
    return -1.0 + (2.0 * p.inv_tau_r()) * d[0] * d[1] * d[2] / det;
}

inline cplx reflection(const BlochParams& p, const ComplexFreq& w) {
    return reflection(p, w.value());
}

/// Assemble r(w) over the common denominator. num = (2/tau_r) prod D - det M.
inline RationalReflection build_rational(const BlochParams& p) {
    LinearSystem sys(p);
    Polynomial den = sys.det_poly();
    Polynomial num = sys.qubit_product_poly() * (2.0 * p.inv_tau_r()) - den;
    return {std::move(num), std::move(den), 1e-7 * p.omega_c()};
}

namespace detail {

/// Remove num/den root pairs closer than tol (exact cancellations in the
/// g = 0 limit survive finite arithmetic only approximately).
inline void cancel_pairs(std::vector<cplx>& a, std::vector<cplx>& b, double tol) {
    for (std::size_t i = 0; i < a.size();) {
        bool hit = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (std::abs(a[i] - b[j]) < tol) {
                a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
                b.erase(b.begin() + static_cast<std::ptrdiff_t>(j));
                hit = true;
                break;
            }
        }
        if (!hit) ++i;
    }
}

} // namespace detail

/// Roots of num (zeros) and den (poles) after pairwise cancellation.
struct CancelledRoots {
    std::vector<cplx> zeros;
    std::vector<cplx> poles;
};

inline CancelledRoots cancelled_roots(const RationalReflection& rr) {
    RootResult zn = find_roots(rr.num);
    RootResult pd = find_roots(rr.den);
    if (!zn.converged || !pd.converged)
        throw rootfind_error("cancelled_roots: root iteration did not converge");
    for (cplx& z : zn.roots) z = polish_root(rr.num, z);
    for (cplx& z : pd.roots) z = polish_root(rr.den, z);
    CancelledRoots out{std::move(zn.roots), std::move(pd.roots)};
    detail::cancel_pairs(out.zeros, out.poles, rr.cancel_tol);
    return out;
}

/// Extract poles or zeros as refined, sorted features. Zeros additionally
/// verify |r| < 1e-8 at the reported location.
inline std::vector<SpectralFeature> find_features(const RationalReflection& rr, FeatureKind kind) {
    CancelledRoots roots = cancelled_roots(rr);
    const std::vector<cplx>& src = (kind == FeatureKind::Zero) ? roots.zeros : roots.poles;
    const Polynomial& poly = (kind == FeatureKind::Zero) ? rr.num : rr.den;

    std::vector<SpectralFeature> out;
    for (cplx z : src) {
        const double resid = std::abs(poly(z));
        if (resid > 1e-12 * poly.scale_at(z))
            throw rootfind_error("find_features: unpolished root residual too large");
        if (kind == FeatureKind::Zero) {
            const double rmag = std::abs(rr.eval(z));
            if (rmag > 1e-8)
                throw rootfind_error("find_features: |r| at zero exceeds 1e-8: " + std::to_string(rmag));
        }
        SpectralFeature f;
        f.kind = kind;
        f.location = ComplexFreq::from_value(z);
        out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const SpectralFeature& a, const SpectralFeature& b) {
        return a.location.re < b.location.re;
    });
    return out;
}

/// Mode participation at a pole: the null vector of M(w_pole), entries
/// normalized to |v| fractions [resonator, q1, q2, q3]. The boolean is
/// false when the two smallest singular values are degenerate.
inline std::pair<std::array<double, 4>, bool> pole_participation(const BlochParams& p, cplx pole) {
    LinearSystem sys(p);
    linalg::Vec<double, 4> sigma{};
    linalg::Vec<cplx, 4> v{};
    linalg::smallest_singular(sys.matrix(pole), sigma, v);
    std::array<double, 4> part{};
    double total = 0.0;
    for (int i = 0; i < 4; ++i) { part[i] = std::abs(v[i]); total += part[i]; }
    for (double& x : part) x /= total;
    const bool distinct = (sigma[1] - sigma[0]) > 1e-6 * std::max(sigma[3], 1e-300);
    return {part, distinct};
}

/// Label each feature by the dominant entry of the participation vector of
/// its nearest pole. Entries include the resonator, so strongly hybridized
/// resonant pairs resolve to one resonator-dominated and one qubit-dominated
/// feature; a degenerate null space labels the feature "mixed".
inline std::vector<SpectralFeature> label_features(std::vector<SpectralFeature> features,
                                                   const BlochParams& p) {
    RationalReflection rr = build_rational(p);
    RootResult pd = find_roots(rr.den);
    if (!pd.converged) throw rootfind_error("label_features: pole iteration did not converge");
    for (cplx& z : pd.roots) z = polish_root(rr.den, z);

    for (SpectralFeature& f : features) {
        const cplx loc = f.location.value();
        cplx nearest = pd.roots.front();
        for (cplx z : pd.roots)
            if (std::abs(z - loc) < std::abs(nearest - loc)) nearest = z;
        auto [part, distinct] = pole_participation(p, nearest);
        f.participation = part;
        if (!distinct) {
            f.dominant = ModeLabel::Mixed;
            continue;
        }
        int arg = 0;
        for (int i = 1; i < 4; ++i)
            if (part[i] > part[arg]) arg = i;
        f.dominant = (arg == 0) ? ModeLabel::Resonator
                                : static_cast<ModeLabel>(static_cast<int>(ModeLabel::Qubit1) + arg - 1);
    }
    return features;
}

/// Convenience: labeled features of a parameter set.
inline std::vector<SpectralFeature> labeled_features(const BlochParams& p, FeatureKind kind) {
    return label_features(find_features(build_rational(p), kind), p);
}

/// |r| sampled on a rectangular complex-frequency window.
struct HeatmapGrid {
    std::vector<double> re;       ///< real-axis samples
    std::vector<double> im;       ///< imaginary-axis (decay) samples
    std::vector<double> values;   ///< |r|, row-major [im][re], >= 0
    std::vector<std::pair<int, int>> pole_cells; ///< sentinel-flagged cells
    double sentinel = 1e6;

    [[nodiscard]] double at(int i_im, int i_re) const {
        return values[static_cast<std::size_t>(i_im) * re.size() + static_cast<std::size_t>(i_re)];
    }
};

struct HeatmapWindow {
    double re_min, re_max;
    double im_min, im_max;
};

template <typename EvalFn>
HeatmapGrid heatmap_generic(const HeatmapWindow& win, int n_re, int n_im, EvalFn&& eval) {
    if (n_re < 2 || n_im < 2) throw config_error("heatmap: need at least a 2x2 grid");
    HeatmapGrid g;
    g.re.resize(static_cast<std::size_t>(n_re));
    g.im.resize(static_cast<std::size_t>(n_im));
    for (int i = 0; i < n_re; ++i)
        g.re[static_cast<std::size_t>(i)] = win.re_min + (win.re_max - win.re_min) * i / (n_re - 1.0);
    for (int i = 0; i < n_im; ++i)
        g.im[static_cast<std::size_t>(i)] = win.im_min + (win.im_max - win.im_min) * i / (n_im - 1.0);
    g.values.resize(static_cast<std::size_t>(n_re) * static_cast<std::size_t>(n_im));
    for (int i = 0; i < n_im; ++i) {
        for (int j = 0; j < n_re; ++j) {
            const ComplexFreq w{g.re[static_cast<std::size_t>(j)], g.im[static_cast<std::size_t>(i)]};
            double val;
            try {
                val = std::abs(eval(w));
            } catch (const pole_proximity_error&) {
                val = g.sentinel;
                g.pole_cells.emplace_back(i, j);
            }
            g.values[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_re) +
                     static_cast<std::size_t>(j)] = val;
        }
    }
    return g;
}

inline HeatmapGrid heatmap(const BlochParams& p, const HeatmapWindow& win, int n_re, int n_im) {
    return heatmap_generic(win, n_re, n_im,
                           [&](const ComplexFreq& w) { return reflection(p, w); });
}

} // namespace cfpulse
