#pragma once

// Channel coherence time (how long the fading stays correlated) and beam
// coherence time (how long the beam stays usefully aligned), numerically
// and in closed form.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "dirchan/correlation.hpp"
#include "dirchan/mathcore.hpp"
#include "dirchan/scenario.hpp"

namespace dirchan {

namespace detail {

inline void require_unit_interval(double level, const char* who) {
    if (!(level > 0.0) || !(level < 1.0))
        throw std::invalid_argument(std::string(who) + ": level must lie in (0, 1)");
}

}  // namespace detail

// First time the combined correlation envelope falls to `level`, found by
// scanning and bisection. tau_max <= 0 selects 100 Doppler periods.
inline std::optional<double> coherence_time_numeric(const Scenario& s, const Beam& b,
                                                    double level = 0.5, double tau_max = 0.0,
                                                    NlosForm form = NlosForm::exact,
                                                    Tolerance tol = {}, int scan_steps = 4096) {
    detail::require_unit_interval(level, "coherence_time_numeric");
    if (tau_max <= 0.0) tau_max = 100.0 / s.doppler_hz;
    return find_first_crossing(
        [&](double tau) { return std::abs(corr_combined(s, b, tau, form)); }, level, tau_max,
        tol, scan_steps);
}

// Closed form valid for small pointing angles.
inline double coherence_time_small_angle(const Scenario& s, const Beam& b, double level = 0.5) {
    detail::require_unit_interval(level, "coherence_time_small_angle");
    const double th = b.width;
    const double r4 = level * level * level * level;
    const double num = 1.0 / r4 - 1.0;
    const double q = s.doppler_hz * std::sin(s.pointing_mu) / s.dr_lambda;
    const double den = std::pow(two_pi * s.doppler_hz * th * th, 2) + q * q / (2.0 * th * th * r4);
    return std::sqrt(num / den);
}

// Closed form with the pointing drift switched off (Doppler spread only).
inline double coherence_time_doppler_only(const Beam& b, double doppler_hz, double level = 0.5) {
    detail::require_unit_interval(level, "coherence_time_doppler_only");
    const double r4 = level * level * level * level;
    return std::sqrt(1.0 / r4 - 1.0) / (two_pi * doppler_hz * b.width * b.width);
}

// Closed form for general pointing angles. Outside its validity region
// the underlying quadratic has no positive root; that is reported as
// nullopt rather than a number.
inline std::optional<double> coherence_time_general(const Scenario& s, const Beam& b,
                                                    double level = 0.5) {
    detail::require_unit_interval(level, "coherence_time_general");
    const double kr = b.concentration;
    const double klr = kr + std::log(level);
    if (klr <= 0.0) return std::nullopt;
    const double num = kr * kr - klr * klr;
    const double drift2 =
        kr * std::pow(s.doppler_hz * std::sin(s.pointing_mu) / s.dr_lambda, 2) / 8.0;
    const double den = (4.0 * klr - 2.0 * kr * kr / klr) * drift2 +
                       std::pow(two_pi * s.doppler_hz, 2) -
                       std::pow(two_pi * s.doppler_hz * kr * std::cos(s.pointing_mu) / klr, 2);
    if (den <= 0.0 || num <= 0.0) return std::nullopt;
    return std::sqrt(num / den);
}

// Closed-form lower bound: the drift term is held at its worst over the
// beam. Throws when the level is unreachable for this beam width.
inline double coherence_time_worst_case(const Scenario& s, const Beam& b, double level = 0.5) {
    detail::require_unit_interval(level, "coherence_time_worst_case");
    const double th2 = b.width * b.width;
    const double a = 1.0 + th2 * std::log(level);
    if (a <= 0.0)
        throw std::domain_error("coherence_time_worst_case: level unreachable at this width");
    const double num = 1.0 - a * a;
    const double q = s.doppler_hz * std::sin(s.pointing_mu) / s.dr_lambda;
    const double den = 0.25 * a * q * q + std::pow(two_pi * s.doppler_hz * th2, 2);
    return std::sqrt(num / den);
}

// Coherence time of the direct path alone.
inline double coherence_time_los(const Scenario& s, const Beam& b, double level = 0.5) {
    detail::require_unit_interval(level, "coherence_time_los");
    const double arg = 2.0 * b.width * b.width * std::log(level) + 1.0;
    if (arg < -1.0)
        throw std::domain_error("coherence_time_los: level unreachable at this width");
    return s.d_lambda / (s.doppler_hz * std::abs(std::sin(s.los_aoa))) * std::acos(arg);
}

// Time until the direct arrival drifts out of the beam, to gain fraction
// zeta.
inline double beam_coherence_los(const Scenario& s, const Beam& b, double zeta = 0.5) {
    detail::require_unit_interval(zeta, "beam_coherence_los");
    const double arg = b.width * b.width * std::log(zeta) + 1.0;
    if (arg < -1.0)
        throw std::domain_error("beam_coherence_los: threshold unreachable at this width");
    return s.d_lambda / (s.doppler_hz * std::abs(std::sin(s.pointing_mu))) * std::acos(arg);
}

// Same for a scattered lobe of the given angular width. The arccos
// argument saturates at -1, i.e. the drift needed to lose the lobe is at
// most a half turn.
inline double beam_coherence_given_width(const Scenario& s, const Beam& b, double lobe_width,
                                         double zeta = 0.5) {
    detail::require_unit_interval(zeta, "beam_coherence_given_width");
    const double arg =
        std::clamp((lobe_width * lobe_width + b.width * b.width) * std::log(zeta) + 1.0, -1.0, 1.0);
    return s.dr_lambda / (s.doppler_hz * std::abs(std::sin(s.pointing_mu))) * std::acos(arg);
}

// Expectation of the above over the lobe-width distribution, by
// quadrature over the truncated Gaussian.
inline double beam_coherence_mean(const Scenario& s, const Beam& b, const SpatialLobeModel& m,
                                  double zeta = 0.5) {
    if (m.sd_width < 0.0)
        throw std::invalid_argument("beam_coherence_mean: sd_width must be nonnegative");
    if (m.sd_width == 0.0) return beam_coherence_given_width(s, b, m.mean_width, zeta);
    const double keep = normal_tail_upper((m.min_width - m.mean_width) / m.sd_width);
    auto f = [&](double w) {
        const double z = (w - m.mean_width) / m.sd_width;
        return beam_coherence_given_width(s, b, w, zeta) * std::exp(-0.5 * z * z);
    };
    const double hi = m.mean_width + 12.0 * m.sd_width;
    const double val = integrate_adaptive(f, m.min_width, hi);
    return val / (m.sd_width * std::sqrt(two_pi) * keep);
}

}  // namespace dirchan
