// Command-line front end: canned experiment sweeps to CSV, plus ad-hoc
// single-value calculators. Angles are taken in degrees at this
// boundary and converted once.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "dirchan/experiments.hpp"

namespace {

using namespace dirchan;

std::string sig(double v, const char* fmt) {
    char buf[48];
    std::snprintf(buf, sizeof buf, fmt, v);
    std::string s(buf);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string sig4(double v) { return sig(v, "%#.4g"); }
std::string sig3(double v) { return sig(v, "%#.3g"); }

std::string format_time(double seconds) {
    if (seconds >= 1.0) return sig4(seconds) + " s";
    if (seconds >= 1e-3) return sig4(seconds * 1e3) + " ms";
    if (seconds >= 1e-6) return sig4(seconds * 1e6) + " us";
    return sig4(seconds * 1e9) + " ns";
}

// Builds a scenario from wavelength-normalized distances so the flags
// are honored bit-exactly.
Scenario scenario_normalized(double speed_mps, double carrier_ghz, double mu_rad,
                             double alos_rad, double d_lambda, double dr_lambda) {
    if (!(speed_mps > 0.0) || !(carrier_ghz > 0.0))
        throw std::invalid_argument("speed and carrier frequency must be positive");
    if (!(d_lambda > 0.0) || !(dr_lambda > 0.0))
        throw std::invalid_argument("normalized distances must be positive");
    Scenario s{};
    s.speed_mps = speed_mps;
    s.carrier_hz = carrier_ghz * 1.0e9;
    s.wavelength_m = speed_of_light / s.carrier_hz;
    s.doppler_hz = speed_mps / s.wavelength_m;
    s.distance_m = d_lambda * s.wavelength_m;
    s.scatter_radius_m = dr_lambda * s.wavelength_m;
    s.d_lambda = d_lambda;
    s.dr_lambda = dr_lambda;
    s.pointing_mu = normalize_angle(mu_rad);
    s.los_aoa = normalize_angle(alos_rad);
    s.rician_k = 0.0;
    return s;
}

struct AngleFlags {
    double theta_deg = 10.0;
    double theta_rad = 0.0;
    bool rad_given = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--theta-deg", theta_deg, "beamwidth in degrees");
        cmd->add_option("--theta-rad", theta_rad, "beamwidth in radians (overrides --theta-deg)")
            ->each([this](const std::string&) { rad_given = true; });
    }
    Beam beam() const { return make_beam(rad_given ? theta_rad : theta_deg * pi / 180.0); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal variation of directional vehicular channels"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a canned experiment and write a CSV table");
    std::string experiment;
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    run->add_option("--experiment", experiment, "one of: fig3 fig4 fig5 fig6 fig7 fig8 fig9 custom")
        ->required();
    run->add_option("--config", config_path, "key=value file overriding experiment defaults");
    run->add_option("--out", out_path, "output CSV path")->required();
    run->add_option("--seed", seed, "master seed for the simulation ensemble");

    auto* calc = app.add_subcommand("calc", "evaluate a single quantity");
    calc->require_subcommand(1);

    double speed_mps = 30.0;
    double carrier_ghz = 60.0;
    double mu_deg = 80.0;
    double level = 0.5;
    double d_lambda = 1.0e4;
    double dr_lambda = 100.0;
    double alos_deg = 0.0;
    bool alos_given = false;
    bool no_pointing = false;
    std::string coh_mode = "numeric";
    AngleFlags coh_theta;
    auto* coh = calc->add_subcommand("coherence", "channel coherence time");
    coh_theta.attach(coh);
    coh->add_option("--R", level, "correlation level defining coherence");
    coh->add_option("--mu-deg", mu_deg, "pointing angle in degrees");
    coh->add_option("--alos-deg", alos_deg, "direct-path angle in degrees (los mode)")
        ->each([&](const std::string&) { alos_given = true; });
    coh->add_option("--dr-lambda", dr_lambda, "normalized scattering radius");
    coh->add_option("--d-lambda", d_lambda, "normalized link distance");
    coh->add_option("--speed-mps", speed_mps, "receiver speed");
    coh->add_option("--carrier-ghz", carrier_ghz, "carrier frequency");
    coh->add_option("--mode", coh_mode, "evaluation method")
        ->check(CLI::IsMember({"numeric", "small-angle", "general", "worst-case", "los"}));
    coh->add_flag("--no-pointing", no_pointing, "ignore pointing drift (Doppler-only closed form)");

    double zeta = 0.5;
    double beta_deg = 0.0;
    bool beta_given = false;
    double lobe_mean_deg = 34.8;
    double lobe_std_deg = 25.7;
    double lobe_min_deg = 1.0;
    double bc_mu_deg = 10.0;
    double bc_d_lambda = 1.0e4;
    double bc_dr_lambda = 1000.0;
    double bc_speed = 30.0;
    double bc_carrier = 60.0;
    std::string bc_mode = "nlos";
    AngleFlags bc_theta;
    auto* bcoh = calc->add_subcommand("beam-coherence", "beam coherence time");
    bc_theta.attach(bcoh);
    bcoh->add_option("--mode", bc_mode, "direct path or lobe-averaged scattered path")
        ->check(CLI::IsMember({"los", "nlos"}));
    bcoh->add_option("--zeta", zeta, "tolerable gain fraction");
    bcoh->add_option("--mu-deg", bc_mu_deg, "pointing angle in degrees");
    bcoh->add_option("--beta-deg", beta_deg, "condition on this lobe width instead of averaging")
        ->each([&](const std::string&) { beta_given = true; });
    bcoh->add_option("--d-lambda", bc_d_lambda, "normalized link distance");
    bcoh->add_option("--dr-lambda", bc_dr_lambda, "normalized scattering radius");
    bcoh->add_option("--lobe-mean-deg", lobe_mean_deg, "mean lobe width");
    bcoh->add_option("--lobe-std-deg", lobe_std_deg, "lobe width standard deviation");
    bcoh->add_option("--lobe-min-deg", lobe_min_deg, "lobe width floor");
    bcoh->add_option("--speed-mps", bc_speed, "receiver speed");
    bcoh->add_option("--carrier-ghz", bc_carrier, "carrier frequency");

    AngleFlags gain_theta;
    auto* gain = calc->add_subcommand("gain", "directivity gain of the receive beam");
    gain_theta.attach(gain);

    double mi_mu_deg = 0.0;
    double snr_db = 0.0;
    double pilot_snr_db = 0.0;
    int nu = 64;
    double bc_hz = 1.0e7;
    double mi_dr_lambda = 100.0;
    double mi_speed = 30.0;
    double mi_carrier = 60.0;
    AngleFlags mi_theta;
    auto* mi = calc->add_subcommand("mi-bound", "mutual-information lower bound per symbol");
    mi_theta.attach(mi);
    mi->add_option("--mu-deg", mi_mu_deg, "pointing angle in degrees");
    mi->add_option("--snr-db", snr_db, "data SNR excluding beam gain");
    mi->add_option("--pilot-snr-db", pilot_snr_db, "pilot SNR excluding beam gain");
    mi->add_option("--nu", nu, "pilot spacing in symbols");
    mi->add_option("--bc-hz", bc_hz, "coherence bandwidth (symbol rate)");
    mi->add_option("--dr-lambda", mi_dr_lambda, "normalized scattering radius");
    mi->add_option("--speed-mps", mi_speed, "receiver speed");
    mi->add_option("--carrier-ghz", mi_carrier, "carrier frequency");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            RunParams p = experiment_defaults(experiment);
            if (!config_path.empty()) p = load_run_params(config_path, p);
            const CsvTable t = run_experiment(experiment, p, seed);
            t.save(out_path);
            std::printf("wrote %s (%zu rows)\n", out_path.c_str(), t.rows().size());
        } else if (coh->parsed()) {
            const double mu = mu_deg * pi / 180.0;
            const double alos = (alos_given ? alos_deg : mu_deg) * pi / 180.0;
            const Scenario s =
                scenario_normalized(speed_mps, carrier_ghz, mu, alos, d_lambda, dr_lambda);
            const Beam b = coh_theta.beam();
            std::optional<double> tc;
            if (no_pointing) {
                tc = coherence_time_doppler_only(b, s.doppler_hz, level);
            } else if (coh_mode == "numeric") {
                tc = coherence_time_numeric(s, b, level);
                if (!tc) throw std::runtime_error("no crossing within the search window");
            } else if (coh_mode == "small-angle") {
                tc = coherence_time_small_angle(s, b, level);
            } else if (coh_mode == "general") {
                tc = coherence_time_general(s, b, level);
                if (!tc) throw std::runtime_error("closed form has no real solution here");
            } else if (coh_mode == "worst-case") {
                tc = coherence_time_worst_case(s, b, level);
            } else {
                tc = coherence_time_los(s, b, level);
            }
            std::printf("%s\n", format_time(*tc).c_str());
        } else if (bcoh->parsed()) {
            const double mu = bc_mu_deg * pi / 180.0;
            const Scenario s =
                scenario_normalized(bc_speed, bc_carrier, mu, mu, bc_d_lambda, bc_dr_lambda);
            const Beam b = bc_theta.beam();
            double tb = 0.0;
            if (bc_mode == "los") {
                tb = beam_coherence_los(s, b, zeta);
            } else if (beta_given) {
                tb = beam_coherence_given_width(s, b, beta_deg * pi / 180.0, zeta);
            } else {
                const double d = pi / 180.0;
                const SpatialLobeModel lobes{lobe_mean_deg * d, lobe_std_deg * d,
                                             lobe_min_deg * d};
                tb = beam_coherence_mean(s, b, lobes, zeta);
            }
            std::printf("%s\n", format_time(tb).c_str());
        } else if (gain->parsed()) {
            const double g = antenna_gain(gain_theta.beam());
            std::printf("%s dB\n", sig3(10.0 * std::log10(g)).c_str());
        } else if (mi->parsed()) {
            const double mu = mi_mu_deg * pi / 180.0;
            const Scenario s =
                scenario_normalized(mi_speed, mi_carrier, mu, mu, 1.0e4, mi_dr_lambda);
            LinkConfig link;
            link.snr_data = std::pow(10.0, snr_db / 10.0);
            link.snr_pilot = std::pow(10.0, pilot_snr_db / 10.0);
            link.pilot_spacing = nu;
            link.symbol_time = 1.0 / bc_hz;
            std::printf("%s nats\n", sig4(mi_lower_bound(s, mi_theta.beam(), link)).c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
