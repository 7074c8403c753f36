#pragma once

// Temporal autocorrelation of a beam-limited channel whose arrival
// spectrum is von Mises. Three ingredients: the scattered component
// (exact and second-order forms), the direct path, and their
// Rician-weighted combination.

#include <cmath>
#include <complex>

#include "dirchan/mathcore.hpp"
#include "dirchan/scenario.hpp"

namespace dirchan {

enum class NlosForm { exact, approximate };

// Scattered-component correlation with the pointing drift folded in
// exactly: the geometric mean of the two arrival spectra is itself von
// Mises with concentration k cos(drift/2) at the midpoint angle.
inline cplx corr_nlos_exact(const Scenario& s, const Beam& b, double tau) {
    if (tau == 0.0) return {1.0, 0.0};
    const double k = b.concentration;
    const double dmu = pointing_error_nlos(s, tau);
    const double kp = k * std::cos(0.5 * dmu);
    const double mup = s.pointing_mu + 0.5 * dmu;
    const cplx x{kp * std::cos(mup), -two_pi * s.doppler_hz * tau};
    const cplx y{kp * std::sin(mup), 0.0};
    return bessel_i0_ratio(std::sqrt(x * x + y * y), k);
}

// Second-order version: the drift becomes a Gaussian decay factor and
// the spectrum stays centered on the nominal pointing angle.
inline cplx corr_nlos_approx(const Scenario& s, const Beam& b, double tau) {
    if (tau == 0.0) return {1.0, 0.0};
    const double k = b.concentration;
    const double drift = pointing_error_nlos(s, tau);
    const double decay = std::exp(-k * drift * drift / 8.0);
    const cplx x{k * std::cos(s.pointing_mu), -two_pi * s.doppler_hz * tau};
    const cplx y{k * std::sin(s.pointing_mu), 0.0};
    return decay * bessel_i0_ratio(std::sqrt(x * x + y * y), k);
}

// Direct-path correlation: a beam misalignment envelope times the
// Doppler phase ramp of the direct arrival.
inline cplx corr_los(const Scenario& s, const Beam& b, double tau) {
    const double dmu = pointing_error_los(s, tau);
    const double mag = std::exp(0.5 * b.concentration * (std::cos(dmu) - 1.0));
    const double phase = -two_pi * s.doppler_hz * tau * std::cos(s.los_aoa);
    return std::polar(mag, phase);
}

inline cplx corr_combined(const Scenario& s, const Beam& b, double tau,
                          NlosForm form = NlosForm::exact) {
    const cplx nlos =
        form == NlosForm::exact ? corr_nlos_exact(s, b, tau) : corr_nlos_approx(s, b, tau);
    if (s.rician_k == 0.0) return nlos;
    return (s.rician_k * corr_los(s, b, tau) + nlos) / (s.rician_k + 1.0);
}

}  // namespace dirchan
