#pragma once

// Economics of beam realignment: hierarchical sweep overhead, the two
// realignment cadences (every channel coherence time versus every beam
// coherence time), and the spectral efficiency each one achieves.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dirchan/coherence.hpp"
#include "dirchan/correlation.hpp"
#include "dirchan/link.hpp"
#include "dirchan/mathcore.hpp"
#include "dirchan/scenario.hpp"

namespace dirchan {

enum class RealignPolicy { short_term, long_term };

struct RealignConfig {
    double power_ratio = 2.0;     // strongest path over second path, linear
    double mean_snr = 1.0;        // mean SNR of the strongest path
    double gain_threshold = 0.5;  // beam-coherence gain fraction (long term)
    double corr_threshold = 0.9;  // envelope level defining the short horizon
    int codebook_levels = 2;      // hierarchical sweep depth
    double coverage = pi;         // angular range the sweep must cover
    double train_time = 1e-6;     // training slot per candidate beam
    bool couple_pilot_snr = true; // pilots ride the drawn SNR
    double pilot_snr = 1.0;       // pilot SNR when not coupled
};

inline void validate(const RealignConfig& cfg) {
    if (!(cfg.power_ratio >= 1.0))
        throw std::invalid_argument("RealignConfig: power_ratio must be at least 1");
    if (!(cfg.mean_snr > 0.0)) throw std::invalid_argument("RealignConfig: mean_snr must be positive");
    if (!(cfg.coverage > 0.0)) throw std::invalid_argument("RealignConfig: coverage must be positive");
    if (!(cfg.train_time > 0.0))
        throw std::invalid_argument("RealignConfig: train_time must be positive");
    if (cfg.codebook_levels < 1)
        throw std::invalid_argument("RealignConfig: codebook_levels must be at least 1");
    if (!cfg.couple_pilot_snr && !(cfg.pilot_snr >= 0.0))
        throw std::invalid_argument("RealignConfig: pilot_snr must be nonnegative");
}

// Chance that a full sweep picks the strongest path, and that it picks
// the runner-up, when their powers differ by power_ratio.
inline std::pair<double, double> selection_probs(double power_ratio) {
    if (!(power_ratio >= 1.0))
        throw std::invalid_argument("selection_probs: power_ratio must be at least 1");
    return {power_ratio / (1.0 + power_ratio), 1.0 / (1.0 + power_ratio)};
}

inline double exponential_pdf(double g, double mean) {
    return g < 0.0 ? 0.0 : std::exp(-g / mean) / mean;
}

// SNR density after a sweep that keeps the better of two exponential
// paths with means mean1 and mean2.
inline double snr_pdf_short(double g, double mean1, double mean2) {
    if (g < 0.0) return 0.0;
    const double rate_sum = 1.0 / mean1 + 1.0 / mean2;
    return std::exp(-g / mean1) / mean1 + std::exp(-g / mean2) / mean2 -
           rate_sum * std::exp(-rate_sum * g);
}

inline double snr_cdf_short(double g, double mean1, double mean2) {
    if (g <= 0.0) return 0.0;
    return (1.0 - std::exp(-g / mean1)) * (1.0 - std::exp(-g / mean2));
}

// Duration of a hierarchical sweep: `levels` stages, each refining by the
// same fanout, ending on beams of the given width. Invalid when a stage
// would fan out to fewer than two beams.
inline double sweep_overhead(const Beam& b, const RealignConfig& cfg) {
    validate(cfg);
    const double ratio = cfg.coverage / b.width;
    if (std::pow(ratio, 1.0 / cfg.codebook_levels) < 2.0)
        throw std::invalid_argument("sweep_overhead: stage fans out to fewer than two beams");
    return cfg.codebook_levels * std::pow(ratio, 2.0 / cfg.codebook_levels) * cfg.train_time;
}

// Sweep depth minimizing the overhead for this beam width; ties go to
// the shallower codebook.
inline int min_overhead_levels(const Beam& b, const RealignConfig& cfg) {
    validate(cfg);
    const double ratio = cfg.coverage / b.width;
    const int lmax = static_cast<int>(std::floor(std::log2(ratio)));
    if (lmax < 1)
        throw std::invalid_argument("min_overhead_levels: coverage too narrow for any codebook");
    int best = 1;
    double best_cost = 0.0;
    for (int l = 1; l <= lmax; ++l) {
        const double cost = l * std::pow(ratio, 2.0 / l) * cfg.train_time;
        if (l == 1 || cost < best_cost) {
            best = l;
            best_cost = cost;
        }
    }
    return best;
}

// Fraction of a horizon left for data after spending `overhead` on the
// sweep; floored at zero when the sweep eats the whole horizon.
inline double temporal_efficiency(double horizon, double overhead) {
    if (!(horizon > 0.0))
        throw std::invalid_argument("temporal_efficiency: horizon must be positive");
    if (overhead < 0.0)
        throw std::invalid_argument("temporal_efficiency: overhead must be nonnegative");
    return std::max(0.0, 1.0 - overhead / horizon);
}

// Data fraction for a policy: short-term realignment must finish within
// the worst-case channel coherence time, long-term within the mean beam
// coherence time.
inline double duty_factor(RealignPolicy policy, const Scenario& s, const Beam& b,
                          const RealignConfig& cfg, const SpatialLobeModel& lobes) {
    const double overhead = sweep_overhead(b, cfg);
    const double horizon = policy == RealignPolicy::short_term
                               ? coherence_time_worst_case(s, b, cfg.corr_threshold)
                               : beam_coherence_mean(s, b, lobes, cfg.gain_threshold);
    return temporal_efficiency(horizon, overhead);
}

// Mean per-symbol rate under the SNR distribution the policy induces:
// short-term tracking rides the better of the two paths, long-term
// alignment stays on whichever path the last full sweep chose.
inline double expected_rate(RealignPolicy policy, const Scenario& s, const Beam& b,
                            const LinkConfig& link, const RealignConfig& cfg) {
    validate(link);
    validate(cfg);
    const double g1 = cfg.mean_snr;
    const double g2 = cfg.mean_snr / cfg.power_ratio;
    const double gain = antenna_gain(b);
    std::vector<double> r2(static_cast<std::size_t>(link.pilot_spacing) + 1);
    for (std::size_t i = 0; i < r2.size(); ++i)
        r2[i] = std::norm(corr_combined(s, b, static_cast<double>(i) * link.symbol_time));
    auto rate = [&](double snr) {
        const double pilot = cfg.couple_pilot_snr ? snr : cfg.pilot_snr;
        return mi_lower_bound_given_r2(r2, snr * gain, pilot * gain);
    };
    if (policy == RealignPolicy::short_term) {
        const double hi = 40.0 * std::max(g1, g2);
        return integrate_adaptive([&](double g) { return rate(g) * snr_pdf_short(g, g1, g2); },
                                  0.0, hi);
    }
    const auto [p1, p2] = selection_probs(cfg.power_ratio);
    const double e1 =
        integrate_adaptive([&](double g) { return rate(g) * exponential_pdf(g, g1); }, 0.0,
                           40.0 * g1);
    const double e2 =
        integrate_adaptive([&](double g) { return rate(g) * exponential_pdf(g, g2); }, 0.0,
                           40.0 * g2);
    return p1 * e1 + p2 * e2;
}

inline double spectral_efficiency(RealignPolicy policy, const Scenario& s, const Beam& b,
                                  const LinkConfig& link, const RealignConfig& cfg,
                                  const SpatialLobeModel& lobes) {
    return duty_factor(policy, s, b, cfg, lobes) * expected_rate(policy, s, b, link, cfg);
}

}  // namespace dirchan
