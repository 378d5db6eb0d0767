#pragma once

// Complex drive/response frequency in the e^{-i w t} convention.

#include <complex>

namespace cfpulse {

using cplx = std::complex<double>;

/// A point w = re - i*im in the complex frequency plane.
///
/// Time factor: e^{-i w t} = e^{-i re t} * e^{-im t}, so im > 0 is a
/// decaying signal and im < 0 a growing one. Units follow the owning
/// model: rad/ns for the coupled-mode model, rad/s for the circuit.
struct ComplexFreq {
    double re = 0.0; ///< carrier angular frequency, > 0 for physical modes
    double im = 0.0; ///< decay component (positive = decaying envelope)

    /// The value of w as a complex number, re - i*im.
    [[nodiscard]] cplx value() const noexcept { return {re, -im}; }

    /// Build from a complex root w (positive Im(w) means growth).
    [[nodiscard]] static ComplexFreq from_value(cplx w) noexcept {
        return {w.real(), -w.imag()};
    }

    [[nodiscard]] bool decaying() const noexcept { return im > 0.0; }
    [[nodiscard]] ComplexFreq conjugate() const noexcept { return {re, -im}; }

    friend bool operator==(const ComplexFreq&, const ComplexFreq&) = default;
};

} // namespace cfpulse
