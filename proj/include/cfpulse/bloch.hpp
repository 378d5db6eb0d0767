#pragma once

// Nonlinear semiclassical dynamics of the three-qubit + resonator +
// waveguide model, driven by a Waveform. Internal sign convention
// (amplitudes decay while rotating as e^{-i w0 t}):
//
//   da/dt   = (-i w_c - 1/tau_r - 1/tau_i) a - i sum_j g_j sm_j + k_r b_in(t)
//   dsm/dt  = (-i w_aj - Gamma_j/2) sm_j + i g_j a sz_j
//   dsz/dt  = -Gamma_j (sz_j + 1) + 2 i g_j (a* sm_j - a sm_j*)
//
// with b_out = -b_in + k_r a. The energy ledger is kept in excitation
// quanta, the unit in which the model conserves exactly: |b_in|^2 is a
// flux of quanta, |a|^2 and (sz_j+1)/2 stored quanta. Ledger integrals
// ride along in the ODE state so their accuracy follows the tolerance.

#include <array>
#include <cmath>
#include <vector>

#include "cfpulse/complex_freq.hpp"
#include "cfpulse/ode.hpp"
#include "cfpulse/params.hpp"
#include "cfpulse/waveform.hpp"

namespace cfpulse {

enum class BlochMode { Nonlinear, Linearized };

struct BlochState {
    cplx a;
    std::array<cplx, 3> sm;
    std::array<double, 3> sz;
};

/// Quantum-number bookkeeping over a run; residual should vanish to
/// integrator accuracy.
struct EnergyLedger {
    double e_in = 0.0;     ///< int |b_in|^2 dt
    double e_refl = 0.0;   ///< int |b_out|^2 dt
    double e_res = 0.0;    ///< |a|^2 at the end
    std::array<double, 3> e_qubits{}; ///< stored qubit excitation at the end
    double e_diss = 0.0;   ///< cumulative loss through Gamma_s and tau_i
    double residual = 0.0; ///< e_in - e_refl - stored - e_diss
};

struct TrajectorySample {
    double t;
    BlochState state;
    cplx b_in;
    cplx b_out;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    EnergyLedger ledger;
    BlochMode mode = BlochMode::Nonlinear;
    double k_r = 0.0;

    /// Stored excitation of qubit j at a sample: (sz+1)/2 for the
    /// nonlinear equations, |sm|^2 in the linearized (weak-drive) ones.
    [[nodiscard]] double qubit_excitation(std::size_t sample, int j) const {
        const BlochState& s = samples[sample].state;
        if (mode == BlochMode::Linearized) return std::norm(s.sm[static_cast<std::size_t>(j)]);
        return 0.5 * (s.sz[static_cast<std::size_t>(j)] + 1.0);
    }

    [[nodiscard]] double peak_qubit_excitation(int j) const {
        double m = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
            m = std::max(m, qubit_excitation(i, j));
        return m;
    }
};

namespace detail {

// state layout: [a, sm1..3, sz1..3, q_in, q_refl, q_diss]
using BState = ode::State<10>;

inline void bloch_rhs(const BlochParams& p, const Waveform& drive, BlochMode mode, double t,
                      const BState& y, BState& dy) {
    const cplx i{0.0, 1.0};
    const cplx a = y[0];
    const cplx b = drive(t);
    const double kr = p.k_r();

    cplx coupling = 0.0;
    for (int j = 0; j < 3; ++j) coupling += p.g()[j] * y[1 + j];
    dy[0] = (-i * p.omega_c() - p.inv_tau_r() - p.inv_tau_i()) * a - i * coupling + kr * b;

    double diss = 2.0 * p.inv_tau_i() * std::norm(a);
    for (int j = 0; j < 3; ++j) {
        const cplx sm = y[1 + j];
        const cplx sz = y[4 + j];
        const double gj = p.g()[j];
        const double gam = p.gamma_s()[j];
        if (mode == BlochMode::Nonlinear) {
            dy[1 + j] = (-i * p.omega_a()[j] - 0.5 * gam) * sm + i * gj * a * sz;
            dy[4 + j] = -gam * (sz + 1.0) +
                        2.0 * i * gj * (std::conj(a) * sm - a * std::conj(sm));
            diss += gam * 0.5 * (sz.real() + 1.0);
        } else {
            dy[1 + j] = (-i * p.omega_a()[j] - 0.5 * gam) * sm - i * gj * a;
            dy[4 + j] = 0.0;
            diss += gam * std::norm(sm);
        }
    }
    const cplx b_out = -b + kr * a;
    dy[7] = std::norm(b);
    dy[8] = std::norm(b_out);
    dy[9] = diss;
}

} // namespace detail

struct TimeSpan {
    double t0 = 0.0;
    double t1 = 0.0;
};

/// Integrate from the ground state (a = 0, sm = 0, sz = -1) over t_span.
/// `sample_dt` <= 0 picks ~4000 uniform samples across the span.
inline Trajectory integrate(const BlochParams& p, const Waveform& drive, TimeSpan t_span,
                            double tol = 1e-9, BlochMode mode = BlochMode::Nonlinear,
                            double sample_dt = 0.0) {
    if (t_span.t1 < drive.t_off() || t_span.t0 > drive.t_on())
        throw config_error("bloch::integrate: t_span must cover the drive window");

    detail::BState y0{};
    for (int j = 0; j < 3; ++j) y0[4 + j] = (mode == BlochMode::Nonlinear) ? -1.0 : 0.0;

    auto rhs = [&](double t, const detail::BState& y, detail::BState& dy) {
        detail::bloch_rhs(p, drive, mode, t, y, dy);
    };
    ode::Solution<10> sol = ode::integrate<10>(rhs, y0, t_span.t0, t_span.t1, tol);

    Trajectory traj;
    traj.mode = mode;
    traj.k_r = p.k_r();
    const double span = t_span.t1 - t_span.t0;
    if (sample_dt <= 0.0) sample_dt = span / 4000.0;
    const auto n_samp = static_cast<std::size_t>(std::ceil(span / sample_dt)) + 1;
    traj.samples.reserve(n_samp);
    for (std::size_t i = 0; i < n_samp; ++i) {
        const double t = std::min(t_span.t0 + static_cast<double>(i) * sample_dt, t_span.t1);
        const detail::BState y = sol.at(t);
        TrajectorySample s;
        s.t = t;
        s.state.a = y[0];
        for (int j = 0; j < 3; ++j) {
            s.state.sm[static_cast<std::size_t>(j)] = y[1 + j];
            s.state.sz[static_cast<std::size_t>(j)] =
                (mode == BlochMode::Nonlinear) ? y[4 + j].real() : -1.0;
        }
        s.b_in = drive(t);
        s.b_out = -s.b_in + p.k_r() * s.state.a;
        traj.samples.push_back(s);
        if (t >= t_span.t1) break;
    }

    const detail::BState yf = sol.steps.back().y;
    EnergyLedger& led = traj.ledger;
    led.e_in = yf[7].real();
    led.e_refl = yf[8].real();
    led.e_diss = yf[9].real();
    led.e_res = std::norm(yf[0]);
    double stored = led.e_res;
    for (int j = 0; j < 3; ++j) {
        led.e_qubits[static_cast<std::size_t>(j)] =
            (mode == BlochMode::Nonlinear) ? 0.5 * (yf[4 + j].real() + 1.0) : std::norm(yf[1 + j]);
        stored += led.e_qubits[static_cast<std::size_t>(j)];
    }
    led.residual = led.e_in - led.e_refl - stored - led.e_diss;
    return traj;
}

/// Fraction of the injected quanta that came back out over the window.
inline double reflected_fraction(const Trajectory& traj) {
    if (!(traj.ledger.e_in > 0.0))
        throw numerical_error("reflected_fraction: run has no input energy");
    return traj.ledger.e_refl / traj.ledger.e_in;
}

} // namespace cfpulse
