#pragma once

// Drive waveforms as closed-form descriptors: a complex-frequency pulse
// (sinusoid under an exponential envelope with raised-cosine on/off ramps)
// and a Gaussian pulse. Energies int |s|^2 dt are stored in closed form;
// integrators evaluate the descriptor directly rather than a sample grid.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cfpulse/complex_freq.hpp"
#include "cfpulse/constants.hpp"
#include "cfpulse/errors.hpp"

namespace cfpulse {

enum class WaveformKind { CF, Gaussian };

namespace detail {

/// int_{t1}^{t2} e^{p t} dt, stable for p -> 0.
inline cplx exp_integral(cplx p, double t1, double t2) {
    if (std::abs(p) * std::max(std::abs(t1), std::abs(t2)) < 1e-8) {
        // second-order series keeps 1e-16 accuracy in this regime
        const cplx mid = 0.5 * (t1 + t2), len = t2 - t1;
        return len * std::exp(p * mid) * (1.0 + p * p * len * len / 24.0);
    }
    return (std::exp(p * t2) - std::exp(p * t1)) / p;
}

/// int_{x1}^{x2} w(x)^2 e^{-2 wi x} dx for the raised-cosine half-ramp
/// w = (1 - cos(pi x / tau))/2 expanded in complex exponentials.
inline double ramp_intensity_integral(double tau, double wi, double x1, double x2) {
    const double k = constants::pi / tau;
    const cplx i{0.0, 1.0};
    // w^2 = 3/8 - 1/2 cos(kx) + 1/8 cos(2kx)
    cplx s = 0.375 * exp_integral(cplx{-2.0 * wi, 0.0}, x1, x2);
    s -= 0.25 * (exp_integral(-2.0 * wi + i * k, x1, x2) + exp_integral(-2.0 * wi - i * k, x1, x2));
    s += 0.0625 * (exp_integral(-2.0 * wi + 2.0 * i * k, x1, x2) +
                   exp_integral(-2.0 * wi - 2.0 * i * k, x1, x2));
    return s.real();
}

} // namespace detail

/// A drive descriptor evaluable at any time, with analytic energy.
class Waveform {
public:
    /// CF pulse: s(t) = b0 w(t) e^{-i w_z (t - t_on)} on [t_on, t_off],
    /// zero outside; w is a raised-cosine ramp of duration tau_ramp at both
    /// ends and 1 between.
    static Waveform cf(const ComplexFreq& target, cplx b0, double t_on, double t_off,
                       double tau_ramp) {
        if (!(t_off > t_on)) throw config_error("cf_waveform: t_off must exceed t_on");
        if (tau_ramp < 0.0 || tau_ramp > 0.1 * (t_off - t_on))
            throw config_error("cf_waveform: tau_ramp must be in [0, 10% of window]");
        if (std::abs(target.im) * (t_off - t_on) > 50.0)
            throw config_error("cf_waveform: envelope dynamic range exceeds e^50");
        Waveform w;
        w.kind_ = WaveformKind::CF;
        w.b0_ = b0;
        w.target_ = target;
        w.t_on_ = t_on;
        w.t_off_ = t_off;
        w.tau_ramp_ = tau_ramp;
        w.energy_ = w.cf_energy();
        return w;
    }

    /// Gaussian pulse: s(t) = b0 e^{-(t-t_c)^2/(2 sigma^2)} e^{-i w_d t} on
    /// [t_on, t_off]. Truncation tighter than +-5 sigma sets a flag.
    static Waveform gaussian(double omega_d, cplx b0, double sigma, double t_c, double t_on,
                             double t_off) {
        if (!(sigma > 0.0)) throw config_error("gaussian_waveform: sigma must be > 0");
        if (!(t_off > t_on)) throw config_error("gaussian_waveform: t_off must exceed t_on");
        Waveform w;
        w.kind_ = WaveformKind::Gaussian;
        w.b0_ = b0;
        w.target_ = {omega_d, 0.0};
        w.sigma_ = sigma;
        w.t_c_ = t_c;
        w.t_on_ = t_on;
        w.t_off_ = t_off;
        w.truncated_ = (t_on > t_c - 5.0 * sigma) || (t_off < t_c + 5.0 * sigma);
        w.energy_ = w.gaussian_energy();
        return w;
    }

    [[nodiscard]] WaveformKind kind() const noexcept { return kind_; }
    [[nodiscard]] cplx b0() const noexcept { return b0_; }
    [[nodiscard]] const ComplexFreq& target() const noexcept { return target_; }
    [[nodiscard]] double t_on() const noexcept { return t_on_; }
    [[nodiscard]] double t_off() const noexcept { return t_off_; }
    [[nodiscard]] double tau_ramp() const noexcept { return tau_ramp_; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    [[nodiscard]] double t_c() const noexcept { return t_c_; }
    [[nodiscard]] bool truncated() const noexcept { return truncated_; }

    /// Analytic energy int |s(t)|^2 dt over the window.
    [[nodiscard]] double energy() const noexcept { return energy_; }

    /// Complex drive amplitude at time t (zero outside the window).
    [[nodiscard]] cplx operator()(double t) const {
        if (t < t_on_ || t > t_off_) return {0.0, 0.0};
        if (kind_ == WaveformKind::CF) {
            const double x = t - t_on_;
            double w = 1.0;
            if (tau_ramp_ > 0.0) {
                if (x < tau_ramp_)
                    w = 0.5 * (1.0 - std::cos(constants::pi * x / tau_ramp_));
                else if (t_off_ - t < tau_ramp_)
                    w = 0.5 * (1.0 - std::cos(constants::pi * (t_off_ - t) / tau_ramp_));
            }
            const cplx phase = std::exp(cplx{0.0, -1.0} * target_.value() * x);
            return b0_ * w * phase;
        }
        const double arg = (t - t_c_) / sigma_;
        return b0_ * std::exp(-0.5 * arg * arg) * std::exp(cplx{0.0, -target_.re * t});
    }

    /// Real-valued drive (voltage sources): Re s(t).
    [[nodiscard]] double real_value(double t) const { return (*this)(t).real(); }

    /// Same descriptor rescaled so energy() == target_energy.
    [[nodiscard]] Waveform with_energy(double target_energy) const {
        if (!(target_energy > 0.0)) throw config_error("match_energy: target energy must be > 0");
        if (!(energy_ > 0.0)) throw numerical_error("match_energy: waveform has zero energy");
        Waveform w = *this;
        w.b0_ *= std::sqrt(target_energy / energy_);
        w.energy_ = (kind_ == WaveformKind::CF) ? w.cf_energy() : w.gaussian_energy();
        return w;
    }

private:
    Waveform() = default;

    [[nodiscard]] double cf_energy() const {
        const double wi = target_.im;
        const double len = t_off_ - t_on_;
        const double b2 = std::norm(b0_);
        // plateau between the ramps
        double e = detail::exp_integral(cplx{-2.0 * wi, 0.0}, tau_ramp_, len - tau_ramp_).real();
        if (tau_ramp_ > 0.0) {
            // rising ramp on [0, tau]
            e += detail::ramp_intensity_integral(tau_ramp_, wi, 0.0, tau_ramp_);
            // falling ramp on [len - tau, len]: w(x) = (1-cos(pi (len-x)/tau))/2;
            // substitute u = len - x, intensity e^{-2 wi (len - u)}
            const double tail = std::exp(-2.0 * wi * len);
            e += tail * detail::ramp_intensity_integral(tau_ramp_, -wi, 0.0, tau_ramp_);
        }
        return b2 * e;
    }

    [[nodiscard]] double gaussian_energy() const {
        // int e^{-(t-tc)^2/sigma^2} dt over [t_on, t_off]
        const double sp = std::sqrt(constants::pi);
        const double a = (t_on_ - t_c_) / sigma_, b = (t_off_ - t_c_) / sigma_;
        return std::norm(b0_) * sigma_ * sp * 0.5 * (std::erf(b) - std::erf(a));
    }

    WaveformKind kind_ = WaveformKind::CF;
    cplx b0_{0.0, 0.0};
    ComplexFreq target_;
    double t_on_ = 0.0, t_off_ = 0.0;
    double tau_ramp_ = 0.0;
    double sigma_ = 0.0, t_c_ = 0.0;
    bool truncated_ = false;
    double energy_ = 0.0;
};

/// Factory matching the operation signature in prose: CF drive at a
/// complex target frequency.
inline Waveform cf_waveform(const ComplexFreq& omega_z, cplx b0, double t_on, double t_off,
                            double tau_ramp) {
    return Waveform::cf(omega_z, b0, t_on, t_off, tau_ramp);
}

inline Waveform gaussian_waveform(double omega_d, cplx b0, double sigma_i, double t_c,
                                  double t_on, double t_off) {
    return Waveform::gaussian(omega_d, b0, sigma_i, t_c, t_on, t_off);
}

inline Waveform match_energy(const Waveform& w, double target_energy) {
    return w.with_energy(target_energy);
}

/// Default ramp duration: five carrier cycles.
inline double default_tau_ramp(double omega_r) { return 5.0 * constants::two_pi / omega_r; }

/// CF window of `lifetimes` envelope lifetimes, capped by the overflow
/// guard (|w_i| T <= 50); a real-frequency target gets `fallback` instead.
inline double default_cf_window(const ComplexFreq& z, double fallback, double lifetimes = 8.0) {
    if (z.im == 0.0) return fallback;
    return std::min(lifetimes, 49.9) / std::abs(z.im);
}

} // namespace cfpulse
