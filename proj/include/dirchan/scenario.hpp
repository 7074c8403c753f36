#pragma once

// Link geometry, receive beam, and the spatial-lobe width model.

#include <cmath>
#include <random>
#include <stdexcept>

#include "dirchan/mathcore.hpp"

namespace dirchan {

inline constexpr double speed_of_light = 3.0e8;

// Wraps an angle to (-pi, pi].
inline double normalize_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a <= -pi) return a + two_pi;
    if (a > pi) return a - two_pi;
    return a;
}

// Vehicular link geometry. Lengths in meters, angles in radians. The
// *_lambda members are wavelength-normalized distances; either distance
// may be infinite, which turns the corresponding pointing drift off.
struct Scenario {
    double speed_mps;
    double carrier_hz;
    double wavelength_m;
    double doppler_hz;
    double distance_m;        // transmitter to receiver
    double scatter_radius_m;  // receiver to the dominant scatter cluster
    double d_lambda;
    double dr_lambda;
    double pointing_mu;  // mean AoA of the scattered component
    double los_aoa;      // AoA of the direct path
    double rician_k;
};

inline Scenario make_scenario(double speed_mps, double carrier_hz, double distance_m,
                              double scatter_radius_m, double pointing_mu,
                              double los_aoa = 0.0, double rician_k = 0.0) {
    if (!(speed_mps > 0.0)) throw std::invalid_argument("make_scenario: speed must be positive");
    if (!(carrier_hz > 0.0)) throw std::invalid_argument("make_scenario: carrier must be positive");
    if (!(distance_m > 0.0) || !(scatter_radius_m > 0.0))
        throw std::invalid_argument("make_scenario: distances must be positive");
    if (rician_k < 0.0) throw std::invalid_argument("make_scenario: rician_k must be nonnegative");
    Scenario s{};
    s.speed_mps = speed_mps;
    s.carrier_hz = carrier_hz;
    s.wavelength_m = speed_of_light / carrier_hz;
    s.doppler_hz = speed_mps / s.wavelength_m;
    s.distance_m = distance_m;
    s.scatter_radius_m = scatter_radius_m;
    s.d_lambda = distance_m / s.wavelength_m;
    s.dr_lambda = scatter_radius_m / s.wavelength_m;
    s.pointing_mu = normalize_angle(pointing_mu);
    s.los_aoa = normalize_angle(los_aoa);
    s.rician_k = rician_k;
    return s;
}

// How far the scattered cluster's mean AoA has drifted after tau seconds
// of receiver motion.
inline double pointing_error_nlos(const Scenario& s, double tau) {
    return s.doppler_hz * tau * std::sin(s.pointing_mu) / s.dr_lambda;
}

// Same drift for the direct path.
inline double pointing_error_los(const Scenario& s, double tau) {
    return s.doppler_hz * tau * std::sin(s.los_aoa) / s.d_lambda;
}

// Receive beam of angular width `width` radians. The von Mises
// concentration of the matched arrival spectrum is 1/width^2, so the two
// members always satisfy concentration * width^2 == 1.
struct Beam {
    double width;
    double concentration;
};

inline Beam make_beam(double width) {
    if (!(width > 0.0) || !(width < pi))
        throw std::invalid_argument("make_beam: width must lie in (0, pi)");
    return {width, 1.0 / (width * width)};
}

inline Beam make_beam_from_concentration(double concentration) {
    if (!(concentration > 1.0 / (pi * pi)))
        throw std::invalid_argument("make_beam_from_concentration: concentration too small");
    return {1.0 / std::sqrt(concentration), concentration};
}

// Width distribution of spatial lobes: Gaussian truncated from below at
// min_width. All radians.
struct SpatialLobeModel {
    double mean_width;
    double sd_width;
    double min_width;
};

inline double sample_lobe_width(const SpatialLobeModel& m, std::mt19937_64& rng) {
    if (m.sd_width < 0.0)
        throw std::invalid_argument("sample_lobe_width: sd_width must be nonnegative");
    if (m.sd_width == 0.0) return m.mean_width;
    for (;;) {
        const double w = m.mean_width + m.sd_width * standard_normal(rng);
        if (w >= m.min_width) return w;
    }
}

}  // namespace dirchan
