#pragma once

// Physical parameter sets for the two fixed topologies: the three-qubit
// coupled-mode (Bloch) model and the three-transmon circuit. Instances are
// immutable after construction and validate their invariants on build.
//
// Unit conventions: the Bloch model uses hbar = 1 with time in ns and
// angular frequency in rad/ns; |b_in|^2 is excitation flux (quanta/ns) and
// |<a>|^2 a stored quantum number. The circuit model is SI throughout.

#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "cfpulse/constants.hpp"
#include "cfpulse/errors.hpp"

namespace cfpulse {

/// Resonator quality-factor convention. The standard cavity convention
/// (energy decay rate w_c/Q, so 1/tau_r = w_c/(2Q)) is the default; the
/// alternative reads Q as w_c * tau_r directly.
enum class QConvention { EnergyDecay, AmplitudeDecay };

/// 1/tau_r from a quality factor.
inline double tau_r_from_Q(double omega_c, double q, QConvention conv = QConvention::EnergyDecay) {
    if (!(q > 0.0)) throw config_error("tau_r_from_Q: Q must be > 0");
    if (!(omega_c > 0.0)) throw config_error("tau_r_from_Q: omega_c must be > 0");
    const double factor = (conv == QConvention::EnergyDecay) ? 2.0 : 1.0;
    return factor * q / omega_c;
}

inline double q_from_tau_r(double omega_c, double tau_r, QConvention conv = QConvention::EnergyDecay) {
    const double factor = (conv == QConvention::EnergyDecay) ? 2.0 : 1.0;
    return omega_c * tau_r / factor;
}

/// All rates and frequencies of the analytic three-qubit + resonator +
/// waveguide model, rad/ns. Radiative and internal losses are stored as
/// amplitude decay rates so the lossless limits are exact zeros.
class BlochParams {
public:
    BlochParams(double omega_c, std::array<double, 3> omega_a, std::array<double, 3> g,
                double inv_tau_r, double inv_tau_i = 0.0,
                std::array<double, 3> gamma_s = {0.0, 0.0, 0.0})
        : omega_c_(omega_c), omega_a_(omega_a), g_(g), inv_tau_r_(inv_tau_r),
          inv_tau_i_(inv_tau_i), gamma_s_(gamma_s) {
        if (!(omega_c_ > 0.0)) throw config_error("BlochParams: omega_c must be > 0");
        for (double w : omega_a_)
            if (!(w > 0.0)) throw config_error("BlochParams: qubit frequencies must be > 0");
        for (double gj : g_)
            if (gj < 0.0) throw config_error("BlochParams: couplings must be >= 0");
        if (inv_tau_r_ < 0.0 || inv_tau_i_ < 0.0)
            throw config_error("BlochParams: decay rates must be >= 0");
        for (double gs : gamma_s_)
            if (gs < 0.0) throw config_error("BlochParams: Gamma_s must be >= 0");
    }

    [[nodiscard]] double omega_c() const noexcept { return omega_c_; }
    [[nodiscard]] const std::array<double, 3>& omega_a() const noexcept { return omega_a_; }
    [[nodiscard]] const std::array<double, 3>& g() const noexcept { return g_; }
    [[nodiscard]] double inv_tau_r() const noexcept { return inv_tau_r_; }
    [[nodiscard]] double inv_tau_i() const noexcept { return inv_tau_i_; }
    [[nodiscard]] const std::array<double, 3>& gamma_s() const noexcept { return gamma_s_; }

    [[nodiscard]] double tau_r() const noexcept {
        return inv_tau_r_ > 0.0 ? 1.0 / inv_tau_r_ : std::numeric_limits<double>::infinity();
    }
    /// Input coupling rate k_r = sqrt(2/tau_r); k_r^2 * tau_r == 2.
    [[nodiscard]] double k_r() const noexcept { return std::sqrt(2.0 * inv_tau_r_); }

    [[nodiscard]] BlochParams with_gamma_s(std::array<double, 3> gs) const {
        return {omega_c_, omega_a_, g_, inv_tau_r_, inv_tau_i_, gs};
    }
    [[nodiscard]] BlochParams with_g(std::array<double, 3> g) const {
        return {omega_c_, omega_a_, g, inv_tau_r_, inv_tau_i_, gamma_s_};
    }
    [[nodiscard]] BlochParams lossless_radiative() const {
        return {omega_c_, omega_a_, g_, inv_tau_r_, 0.0, {0.0, 0.0, 0.0}};
    }

private:
    double omega_c_;
    std::array<double, 3> omega_a_;
    std::array<double, 3> g_;
    double inv_tau_r_;
    double inv_tau_i_;
    std::array<double, 3> gamma_s_;
};

/// Main-text parameter point: resonator and qubit 1 aligned at 2*pi*5.77
/// rad/ns, qubits 2 and 3 detuned by +1% and +2%, g = w_c/100, Q = 31,
/// no non-radiative loss.
inline BlochParams paper_defaults_bloch(QConvention conv = QConvention::EnergyDecay) {
    const double wc = constants::two_pi * 5.77;
    return {wc,
            {wc, 1.01 * wc, 1.02 * wc},
            {wc / 100.0, wc / 100.0, wc / 100.0},
            1.0 / tau_r_from_Q(wc, 31.0, conv)};
}

/// Lumped-element values of the three-transmon circuit, SI units.
/// The critical current is primary; the zero-bias junction inductance is
/// derived as L_j0 = Phi0/(2 pi I_c) so the Josephson relation and the
/// small-signal inductor agree exactly. A user-supplied L_j0 must match
/// the derived value to 1 part in 1e6.
class CircuitParams {
public:
    CircuitParams(double i_c, std::array<double, 3> c_j, std::array<double, 3> c_c,
                  double c_k, std::optional<double> r_shunt = std::nullopt,
                  double z0 = 50.0, std::optional<double> l_j0 = std::nullopt)
        : i_c_(i_c), c_j_(c_j), c_c_(c_c), c_k_(c_k), r_shunt_(r_shunt), z0_(z0) {
        if (!(i_c_ > 0.0)) throw config_error("CircuitParams: I_c must be > 0");
        for (double c : c_j_)
            if (!(c > 0.0)) throw config_error("CircuitParams: C_j must be > 0");
        for (double c : c_c_)
            if (!(c >= 0.0)) throw config_error("CircuitParams: C_c must be >= 0");
        if (!(c_k_ > 0.0)) throw config_error("CircuitParams: C_k must be > 0");
        if (r_shunt_ && !(*r_shunt_ > 0.0)) throw config_error("CircuitParams: R_shunt must be > 0");
        if (!(z0_ > 0.0)) throw config_error("CircuitParams: Z_0 must be > 0");
        if (l_j0) {
            const double derived = constants::phi0 / (constants::two_pi * i_c_);
            if (std::abs(*l_j0 - derived) > 1e-6 * derived)
                throw config_error("CircuitParams: L_j0 inconsistent with Phi0/(2 pi I_c)");
        }
    }

    [[nodiscard]] double i_c() const noexcept { return i_c_; }
    [[nodiscard]] double l_j0() const noexcept {
        return constants::phi0 / (constants::two_pi * i_c_);
    }
    [[nodiscard]] const std::array<double, 3>& c_j() const noexcept { return c_j_; }
    [[nodiscard]] const std::array<double, 3>& c_c() const noexcept { return c_c_; }
    [[nodiscard]] double c_k() const noexcept { return c_k_; }
    [[nodiscard]] std::optional<double> r_shunt() const noexcept { return r_shunt_; }
    [[nodiscard]] bool lossy() const noexcept { return r_shunt_.has_value(); }
    [[nodiscard]] double z0() const noexcept { return z0_; }

    [[nodiscard]] double e_j() const noexcept {
        return i_c_ * constants::phi0 / constants::two_pi;
    }

    [[nodiscard]] CircuitParams with_r_shunt(std::optional<double> r) const {
        return {i_c_, c_j_, c_c_, c_k_, r, z0_};
    }
    [[nodiscard]] CircuitParams lossless() const { return with_r_shunt(std::nullopt); }

private:
    double i_c_;
    std::array<double, 3> c_j_;
    std::array<double, 3> c_c_;
    double c_k_;
    std::optional<double> r_shunt_;
    double z0_;
};

/// E_J / E_C for qubit `which` with C_Sigma = C_j + C_c (the coupling
/// capacitor contributes < 6% at the defaults).
inline double ej_ec_ratio(const CircuitParams& p, int which = 0) {
    if (which < 0 || which > 2) throw config_error("ej_ec_ratio: qubit index out of range");
    const double c_sigma = p.c_j()[which] + p.c_c()[which];
    if (!(c_sigma > 0.0)) throw config_error("ej_ec_ratio: C_Sigma must be > 0");
    const double e_c = constants::e_charge * constants::e_charge / (2.0 * c_sigma);
    return p.e_j() / e_c;
}

/// Circuit values of the transmon section: I_c = 0.1647 uA (so
/// L_j0 = 1.9982 nH), C_j = 0.2 pF, C_c = {10, 11, 12.1} fF following the
/// (1+0.1)^k ladder, C_k = 10 pF, Z_0 = 50 Ohm. Lossless by default;
/// `lossy` adds the 0.2 MOhm per-qubit shunt.
inline CircuitParams paper_defaults_circuit(bool lossy = false) {
    CircuitParams p{0.1647e-6,
                    {0.2e-12, 0.2e-12, 0.2e-12},
                    {10e-15, 11e-15, 12.1e-15},
                    10e-12,
                    lossy ? std::optional<double>(0.2e6) : std::nullopt,
                    50.0};
    const double ratio = ej_ec_ratio(p, 0);
    if (std::abs(ratio - 850.0) > 0.05 * 850.0)
        throw config_error("paper_defaults_circuit: E_J/E_C drifted outside 850 +- 5%");
    return p;
}

} // namespace cfpulse
