#pragma once

// Pilot-aided link layer: beamforming gain, Kalman channel-estimation
// error, and the resulting per-symbol mutual-information lower bound.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "dirchan/correlation.hpp"
#include "dirchan/mathcore.hpp"
#include "dirchan/scenario.hpp"

namespace dirchan {

// Beamforming gain of the width-matched beam, linear scale.
inline double antenna_gain(const Beam& b) {
    return std::exp(b.concentration - log_bessel_i0(b.concentration));
}

// Pilot-aided estimation settings. SNRs are linear, the channel has unit
// variance, and every pilot_spacing-th symbol is a pilot.
struct LinkConfig {
    double snr_data = 1.0;
    double snr_pilot = 1.0;
    int pilot_spacing = 64;
    double symbol_time = 1e-7;
};

inline void validate(const LinkConfig& cfg) {
    if (cfg.pilot_spacing < 2)
        throw std::invalid_argument("LinkConfig: pilot_spacing must be at least 2");
    if (!(cfg.symbol_time > 0.0))
        throw std::invalid_argument("LinkConfig: symbol_time must be positive");
    if (cfg.snr_data < 0.0 || cfg.snr_pilot < 0.0)
        throw std::invalid_argument("LinkConfig: SNRs must be nonnegative");
}

// Kalman prediction-error variances psi_1..psi_len at successive pilots,
// for a channel that decorrelates to `alpha` between pilots and an
// effective pilot SNR (gain included) of pilot_snr_gain.
inline std::vector<double> kalman_error_sequence(cplx alpha, double pilot_snr_gain, int len) {
    if (len < 1) throw std::invalid_argument("kalman_error_sequence: len must be positive");
    if (pilot_snr_gain < 0.0)
        throw std::invalid_argument("kalman_error_sequence: SNR must be nonnegative");
    const double r2 = std::norm(alpha);
    if (r2 > 1.0 + 1e-12)
        throw std::invalid_argument("kalman_error_sequence: |alpha| must not exceed 1");
    const double sx = std::max(0.0, 1.0 - r2);
    std::vector<double> out(static_cast<std::size_t>(len));
    double psi = 1.0 / (1.0 / (1.0 + sx) + pilot_snr_gain);
    out[0] = psi;
    for (int l = 1; l < len; ++l) {
        psi = 1.0 / (1.0 / (r2 * psi + sx) + pilot_snr_gain);
        out[static_cast<std::size_t>(l)] = psi;
    }
    return out;
}

// Fixed point of that recursion. Rearranged so the small-corr_sq limit
// 1/(1+S) comes out without cancellation.
inline double psi_steady(double corr_sq, double pilot_snr_gain) {
    if (!(corr_sq >= 0.0) || corr_sq > 1.0)
        throw std::invalid_argument("psi_steady: corr_sq must lie in [0, 1]");
    if (pilot_snr_gain < 0.0) throw std::invalid_argument("psi_steady: SNR must be nonnegative");
    const double sx = 1.0 - corr_sq;
    if (sx == 0.0) return pilot_snr_gain == 0.0 ? 1.0 : 0.0;
    const double a = corr_sq - 1.0 - pilot_snr_gain * sx;
    const double disc = a * a + 4.0 * pilot_snr_gain * corr_sq * sx;
    return 2.0 * sx / (std::sqrt(disc) - a);
}

// Error variance predicting the channel at an offset where the squared
// correlation to the estimate has dropped to corr_sq.
inline double estimation_error(double psi, double corr_sq) { return psi + 1.0 - corr_sq; }

// Average mutual-information lower bound over one pilot period, given
// r2[i] = |R(i T)|^2 for symbol offsets i = 0..nu. Offset 1 carries the
// pilot's own slot and contributes nothing.
inline double mi_lower_bound_given_r2(const std::vector<double>& r2, double data_snr_gain,
                                      double pilot_snr_gain) {
    if (r2.size() < 3)
        throw std::invalid_argument("mi_lower_bound_given_r2: need offsets 0..nu with nu >= 2");
    const std::size_t nu = r2.size() - 1;
    const double psi = psi_steady(r2[nu], pilot_snr_gain);
    double acc = 0.0;
    for (std::size_t i = 2; i <= nu; ++i) {
        const double denom = estimation_error(psi, r2[i]) * data_snr_gain + 1.0;
        acc += std::log(1.0 + (r2[i] - psi) * data_snr_gain / denom);
    }
    return acc / static_cast<double>(nu);
}

inline double mi_lower_bound(const Scenario& s, const Beam& b, const LinkConfig& cfg,
                             NlosForm form = NlosForm::exact) {
    validate(cfg);
    const double g = antenna_gain(b);
    std::vector<double> r2(static_cast<std::size_t>(cfg.pilot_spacing) + 1);
    for (std::size_t i = 0; i < r2.size(); ++i)
        r2[i] = std::norm(corr_combined(s, b, static_cast<double>(i) * cfg.symbol_time, form));
    return mi_lower_bound_given_r2(r2, cfg.snr_data * g, cfg.snr_pilot * g);
}

inline std::vector<int> default_pilot_grid() {
    std::vector<int> g;
    for (int nu = 2; nu <= 1024; nu *= 2) g.push_back(nu);
    return g;
}

struct PilotChoice {
    int spacing = 0;
    double rate = 0.0;
};

// Best pilot spacing on an ascending grid; ties go to the sparser
// (larger) spacing.
inline PilotChoice optimal_pilot_spacing(const Scenario& s, const Beam& b, LinkConfig cfg,
                                         const std::vector<int>& grid = default_pilot_grid(),
                                         NlosForm form = NlosForm::exact) {
    if (grid.empty()) throw std::invalid_argument("optimal_pilot_spacing: empty grid");
    PilotChoice best;
    bool first = true;
    for (int nu : grid) {
        cfg.pilot_spacing = nu;
        const double rate = mi_lower_bound(s, b, cfg, form);
        if (first || rate >= best.rate) {
            best = {nu, rate};
            first = false;
        }
    }
    return best;
}

}  // namespace dirchan
