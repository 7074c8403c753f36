#pragma once

// Canned parameter sweeps producing the library's reference result
// tables. Each experiment starts from a published default parameter
// set; a config file overrides individual keys. Sweeps that fix their
// own angle or bandwidth grid ignore the corresponding config key.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirchan/coherence.hpp"
#include "dirchan/config.hpp"
#include "dirchan/correlation.hpp"
#include "dirchan/link.hpp"
#include "dirchan/mcsim.hpp"
#include "dirchan/realign.hpp"

namespace dirchan {

// Ensemble size knobs for the simulation experiment; tests shrink them.
struct McOptions {
    int traces = 200;
    int sinusoids = 10000;
    int samples = 1024;
    int max_lag = 64;
    unsigned threads = 0;
};

namespace detail {

inline double opt_or_nan(std::optional<double> v) {
    return v ? *v : std::numeric_limits<double>::quiet_NaN();
}

inline CsvTable table_for(const char* name, std::uint64_t seed, const RunParams& p) {
    CsvTable t;
    t.add_manifest("experiment", std::string(name));
    t.add_manifest("seed", seed);
    t.add_manifest_params(p);
    return t;
}

}  // namespace detail

// Exact, approximate, and simulated correlation envelopes on a lag grid
// of 1/128 Doppler cycle.
inline CsvTable run_fig3(const RunParams& p, std::uint64_t seed, const McOptions& mc = {}) {
    const Scenario s = scenario_from(p);
    const Beam b = beam_from(p);
    const double dt = 1.0 / (128.0 * s.doppler_hz);
    const auto traces =
        simulate_nlos_ensemble(s, b, mc.sinusoids, mc.samples, dt, seed, mc.traces, mc.threads);
    const auto emp = empirical_correlation(traces, mc.max_lag);
    CsvTable t = detail::table_for("fig3", seed, p);
    t.add_manifest("traces", mc.traces);
    t.add_manifest("sinusoids", mc.sinusoids);
    t.add_manifest("samples_per_trace", mc.samples);
    t.add_manifest("sample_time_s", dt);
    t.set_columns({"fD_tau", "exact_abs", "approx_abs", "sim_abs"});
    for (int m = 0; m <= mc.max_lag; ++m) {
        const double tau = m * dt;
        t.add_row({m / 128.0, std::abs(corr_nlos_exact(s, b, tau)),
                   std::abs(corr_nlos_approx(s, b, tau)), std::abs(emp[m])});
    }
    return t;
}

// Combined-correlation envelope against lag for a sweep of the Rician
// K factor; the direct path arrives from the pointing direction.
inline CsvTable run_fig4(const RunParams& p, std::uint64_t seed) {
    const Beam b = beam_from(p);
    CsvTable t = detail::table_for("fig4", seed, p);
    t.set_columns({"fD_tau", "rician_k", "corr_abs"});
    for (int ki = 0; ki <= 10; ++ki) {
        RunParams pk = p;
        pk.rician_k = ki / 5.0;
        const Scenario s = scenario_from(pk);
        for (int i = 0; i <= 100; ++i) {
            const double fd_tau = i * 0.25;
            t.add_row(
                {fd_tau, pk.rician_k, std::abs(corr_combined(s, b, fd_tau / s.doppler_hz))});
        }
    }
    return t;
}

// Numeric coherence time against the two small-angle closed forms, over
// beamwidth.
inline CsvTable run_fig5(const RunParams& p, std::uint64_t seed) {
    const Scenario s = scenario_from(p);
    const double level = 0.5;
    const double tau_max = 3000.0 / s.doppler_hz;
    CsvTable t = detail::table_for("fig5", seed, p);
    t.add_manifest("corr_threshold", level);
    t.add_manifest("time_unit", std::string("s"));
    t.set_columns({"theta_deg", "tc_numeric", "tc_small_mu", "tc_doppler_only"});
    for (int i = 2; i <= 60; ++i) {
        const double theta_deg = i * 0.5;
        const Beam b = make_beam(theta_deg * pi / 180.0);
        t.add_row({theta_deg, detail::opt_or_nan(coherence_time_numeric(s, b, level, tau_max)),
                   coherence_time_small_angle(s, b, level),
                   coherence_time_doppler_only(b, s.doppler_hz, level)});
    }
    return t;
}

// Numeric vs general closed-form coherence time for four pointing
// angles; empty cells (nan) mark widths where the closed form has no
// real solution.
inline CsvTable run_fig6(const RunParams& p, std::uint64_t seed) {
    static constexpr std::array<int, 4> mu_deg{30, 45, 60, 90};
    const double level = 0.5;
    CsvTable t = detail::table_for("fig6", seed, p);
    t.add_manifest("corr_threshold", level);
    t.add_manifest("time_unit", std::string("s"));
    std::vector<std::string> cols{"theta_deg"};
    std::vector<Scenario> scen;
    for (int mu : mu_deg) {
        cols.push_back("tc_numeric_mu" + std::to_string(mu));
        cols.push_back("tc_general_mu" + std::to_string(mu));
        RunParams pm = p;
        pm.pointing_deg = mu;
        scen.push_back(scenario_from(pm));
    }
    t.set_columns(cols);
    for (int i = 2; i <= 90; ++i) {
        const double theta_deg = i * 0.5;
        const Beam b = make_beam(theta_deg * pi / 180.0);
        std::vector<double> row{theta_deg};
        for (const Scenario& s : scen) {
            row.push_back(detail::opt_or_nan(coherence_time_numeric(s, b, level)));
            row.push_back(detail::opt_or_nan(coherence_time_general(s, b, level)));
        }
        t.add_row(row);
    }
    return t;
}

// Beam coherence time over beamwidth: direct path and lobe-averaged
// scattered path, each at pointing angles of 10 and 80 degrees.
inline CsvTable run_fig7(const RunParams& p, std::uint64_t seed) {
    RunParams p10 = p;
    p10.pointing_deg = 10.0;
    RunParams p80 = p;
    p80.pointing_deg = 80.0;
    const Scenario s10 = scenario_from(p10);
    const Scenario s80 = scenario_from(p80);
    const SpatialLobeModel lobes = lobes_from(p);
    const double zeta = 0.5;
    CsvTable t = detail::table_for("fig7", seed, p);
    t.add_manifest("gain_threshold", zeta);
    t.add_manifest("time_unit", std::string("s"));
    t.set_columns({"theta_deg", "TB_los_mu10", "TB_los_mu80", "TB_nlos_mu10", "TB_nlos_mu80"});
    for (int i = 2; i <= 120; ++i) {
        const double theta_deg = i * 0.5;
        const Beam b = make_beam(theta_deg * pi / 180.0);
        t.add_row({theta_deg, beam_coherence_los(s10, b, zeta), beam_coherence_los(s80, b, zeta),
                   beam_coherence_mean(s10, b, lobes, zeta),
                   beam_coherence_mean(s80, b, lobes, zeta)});
    }
    return t;
}

// Mutual-information lower bound against pilot spacing: one sweep over
// coherence bandwidth at zero pointing angle, one over pointing angle
// at 10 MHz. Both SNRs are fixed at 0 dB.
inline CsvTable run_fig8(const RunParams& p, std::uint64_t seed) {
    struct Combo {
        double bc_mhz;
        double mu_deg;
    };
    static constexpr std::array<Combo, 7> combos{
        {{5, 0}, {10, 0}, {20, 0}, {40, 0}, {10, 10}, {10, 45}, {10, 80}}};
    const Beam b = beam_from(p);
    CsvTable t = detail::table_for("fig8", seed, p);
    t.add_manifest("snr_data_db", 0.0);
    t.add_manifest("snr_pilot_db", 0.0);
    t.set_columns({"nu", "bc_mhz", "mu_deg", "mi_nats"});
    for (const auto& c : combos) {
        RunParams pm = p;
        pm.pointing_deg = c.mu_deg;
        const Scenario s = scenario_from(pm);
        LinkConfig link;
        link.symbol_time = 1.0 / (c.bc_mhz * 1.0e6);
        for (int nu : default_pilot_grid()) {
            link.pilot_spacing = nu;
            t.add_row({static_cast<double>(nu), c.bc_mhz, c.mu_deg, mi_lower_bound(s, b, link)});
        }
    }
    return t;
}

// Short- vs long-horizon spectral efficiency of hierarchical sweep
// realignment over beamwidth, at path-power ratios of 3 and 10 dB.
inline CsvTable run_fig9(const RunParams& p, std::uint64_t seed) {
    const Scenario s = scenario_from(p);
    const SpatialLobeModel lobes = lobes_from(p);
    const LinkConfig link;
    RealignConfig cfg;
    CsvTable t = detail::table_for("fig9", seed, p);
    t.add_manifest("pilot_spacing", link.pilot_spacing);
    t.add_manifest("symbol_time_s", link.symbol_time);
    t.add_manifest("snr_db", 0.0);
    t.add_manifest("codebook_levels", cfg.codebook_levels);
    t.add_manifest("coverage_deg", cfg.coverage * 180.0 / pi);
    t.add_manifest("train_time_s", cfg.train_time);
    t.add_manifest("corr_threshold", cfg.corr_threshold);
    t.add_manifest("gain_threshold", cfg.gain_threshold);
    t.set_columns({"theta_deg", "delta_db", "C_short", "C_long"});
    for (double delta_db : {3.0, 10.0}) {
        cfg.power_ratio = std::pow(10.0, delta_db / 10.0);
        for (int i = 2; i <= 30; ++i) {
            const Beam b = make_beam(i * pi / 180.0);
            t.add_row({static_cast<double>(i), delta_db,
                       spectral_efficiency(RealignPolicy::short_term, s, b, link, cfg, lobes),
                       spectral_efficiency(RealignPolicy::long_term, s, b, link, cfg, lobes)});
        }
    }
    return t;
}

// Correlation envelopes at exactly the configured scenario.
inline CsvTable run_custom(const RunParams& p, std::uint64_t seed) {
    const Scenario s = scenario_from(p);
    const Beam b = beam_from(p);
    CsvTable t = detail::table_for("custom", seed, p);
    t.set_columns({"fD_tau", "nlos_exact_abs", "nlos_approx_abs", "combined_abs"});
    for (int i = 0; i <= 200; ++i) {
        const double fd_tau = i * 0.01;
        const double tau = fd_tau / s.doppler_hz;
        t.add_row({fd_tau, std::abs(corr_nlos_exact(s, b, tau)),
                   std::abs(corr_nlos_approx(s, b, tau)), std::abs(corr_combined(s, b, tau))});
    }
    return t;
}

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"fig3", "fig4", "fig5", "fig6",
                                                "fig7", "fig8", "fig9", "custom"};
    return names;
}

inline RunParams experiment_defaults(const std::string& name) {
    RunParams p;
    const double theta_conc50 = 180.0 / (pi * std::sqrt(50.0));
    if (name == "fig3") {
        p.beamwidth_deg = theta_conc50;
    } else if (name == "fig4") {
        p.pointing_deg = 10.0;
        p.scatter_radius_m = 5.0;
        p.beamwidth_deg = theta_conc50;
    } else if (name == "fig5") {
        p.pointing_deg = 1.0;
    } else if (name == "fig6") {
        p.pointing_deg = 30.0;
    } else if (name == "fig7") {
        p.pointing_deg = 10.0;
        p.scatter_radius_m = 5.0;
    } else if (name == "fig8") {
        p.pointing_deg = 0.0;
    } else if (name == "fig9") {
        p.pointing_deg = 90.0;
        p.scatter_radius_m = 5.0;
    }
    return p;
}

inline CsvTable run_experiment(const std::string& name, const RunParams& p, std::uint64_t seed,
                               const McOptions& mc = {}) {
    if (name == "fig3") return run_fig3(p, seed, mc);
    if (name == "fig4") return run_fig4(p, seed);
    if (name == "fig5") return run_fig5(p, seed);
    if (name == "fig6") return run_fig6(p, seed);
    if (name == "fig7") return run_fig7(p, seed);
    if (name == "fig8") return run_fig8(p, seed);
    if (name == "fig9") return run_fig9(p, seed);
    if (name == "custom") return run_custom(p, seed);
    throw std::invalid_argument("unknown experiment: '" + name + "'");
}

}  // namespace dirchan
