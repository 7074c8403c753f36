#pragma once

// Monte Carlo channel simulator: sums of sinusoids drawn from the
// drifting arrival spectrum, plus the empirical autocorrelation used to
// validate the closed forms. Written to be bit-reproducible for a given
// seed on any platform.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dirchan/mathcore.hpp"
#include "dirchan/scenario.hpp"

namespace dirchan {

struct ChannelTrace {
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::vector<cplx> samples;
};

// splitmix64 stream: statistically independent per-trace seeds from one
// master seed and a trace index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One fading trace h[n], n = 0..n_samples-1 at spacing dt:
//
//   h[n] = sum_k sqrt(P(a_k | mu(n dt)) w) exp(j (phi_k + 2 pi fD n dt cos a_k))
//
// with a_k the midpoints of a uniform angle grid of width w = 2 pi / K,
// phi_k independent uniform phases, P the von Mises arrival spectrum
// centered on the drifted pointing angle, and the result scaled to unit
// empirical power. The Doppler phase advances by a per-sinusoid rotator
// so the inner loop is one exp and one complex multiply-add.
inline ChannelTrace simulate_nlos(const Scenario& s, const Beam& b, int n_sinusoids,
                                  int n_samples, double dt, std::uint64_t seed) {
    if (n_sinusoids < 1) throw std::invalid_argument("simulate_nlos: need at least one sinusoid");
    if (n_samples < 1) throw std::invalid_argument("simulate_nlos: need at least one sample");
    if (!(dt > 0.0)) throw std::invalid_argument("simulate_nlos: dt must be positive");

    const double kr = b.concentration;
    const double w = two_pi / static_cast<double>(n_sinusoids);
    const double c0 = std::sqrt(w * std::exp(-log_bessel_i0(kr)) / two_pi);

    std::mt19937_64 rng(seed);
    std::vector<double> ca(n_sinusoids);
    std::vector<double> sa(n_sinusoids);
    std::vector<cplx> phase(n_sinusoids);
    std::vector<cplx> rot(n_sinusoids);
    for (int k = 0; k < n_sinusoids; ++k) {
        const double alpha = -pi + (static_cast<double>(k) + 0.5) * w;
        ca[k] = std::cos(alpha);
        sa[k] = std::sin(alpha);
        phase[k] = std::polar(1.0, two_pi * uniform_unit(rng));
        rot[k] = std::polar(1.0, two_pi * s.doppler_hz * dt * ca[k]);
    }

    ChannelTrace tr{dt, seed, std::vector<cplx>(static_cast<std::size_t>(n_samples))};
    double power = 0.0;
    for (int n = 0; n < n_samples; ++n) {
        const double mu = s.pointing_mu + pointing_error_nlos(s, static_cast<double>(n) * dt);
        const double cm = std::cos(mu);
        const double sm = std::sin(mu);
        cplx acc{0.0, 0.0};
        for (int k = 0; k < n_sinusoids; ++k) {
            const double amp = c0 * std::exp(0.5 * kr * (ca[k] * cm + sa[k] * sm));
            acc += amp * phase[k];
            phase[k] *= rot[k];
        }
        tr.samples[static_cast<std::size_t>(n)] = acc;
        power += std::norm(acc);
    }
    const double scale = 1.0 / std::sqrt(power / static_cast<double>(n_samples));
    for (auto& h : tr.samples) h *= scale;
    return tr;
}

// Independent traces seeded from derive_seed(master, i). Work is farmed
// out to threads but lands in index order, so the result does not depend
// on scheduling.
inline std::vector<ChannelTrace> simulate_nlos_ensemble(const Scenario& s, const Beam& b,
                                                        int n_sinusoids, int n_samples, double dt,
                                                        std::uint64_t master_seed, int n_traces,
                                                        unsigned n_threads = 0) {
    if (n_traces < 1) throw std::invalid_argument("simulate_nlos_ensemble: need at least one trace");
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<ChannelTrace> out(static_cast<std::size_t>(n_traces));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_traces) return;
            out[static_cast<std::size_t>(i)] =
                simulate_nlos(s, b, n_sinusoids, n_samples, dt, derive_seed(master_seed, i));
        }
    };
    std::vector<std::thread> pool;
    const unsigned workers = std::min<unsigned>(n_threads, static_cast<unsigned>(n_traces));
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

// Ensemble autocorrelation at lags 0..max_lag: the average of
// h[n] conj(h[n+m]) over n and traces, each lag divided by its own pair
// count, normalized by the lag-0 value.
inline std::vector<cplx> empirical_correlation(const std::vector<ChannelTrace>& traces,
                                               int max_lag) {
    if (traces.empty()) throw std::invalid_argument("empirical_correlation: no traces");
    const std::size_t n = traces.front().samples.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n)
        throw std::out_of_range("empirical_correlation: lag exceeds trace length");
    std::vector<cplx> acc(static_cast<std::size_t>(max_lag) + 1, cplx{0.0, 0.0});
    std::vector<double> cnt(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (const auto& tr : traces) {
        if (tr.samples.size() != n)
            throw std::invalid_argument("empirical_correlation: traces differ in length");
        for (std::size_t m = 0; m <= static_cast<std::size_t>(max_lag); ++m) {
            cplx sum{0.0, 0.0};
            for (std::size_t i = 0; i + m < n; ++i)
                sum += tr.samples[i] * std::conj(tr.samples[i + m]);
            acc[m] += sum;
            cnt[m] += static_cast<double>(n - m);
        }
    }
    const double base = (acc[0] / cnt[0]).real();
    std::vector<cplx> out(acc.size());
    for (std::size_t m = 0; m < acc.size(); ++m) out[m] = acc[m] / cnt[m] / base;
    return out;
}

}  // namespace dirchan
