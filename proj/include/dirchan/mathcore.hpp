#pragma once

// Numerical primitives: complex modified Bessel function of order zero,
// periodic and adaptive quadrature, level-crossing search, Gaussian
// expectations. Everything is double precision and header-only.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

namespace dirchan {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

using cplx = std::complex<double>;

struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 60;
};

namespace detail {

// Power series sum_k (z^2/4)^k / (k!)^2. Accurate for |z| below ~20;
// beyond that the alternating terms near the imaginary axis cancel
// too violently.
inline cplx i0_series(cplx z) {
    const cplx q = 0.25 * z * z;
    cplx term{1.0, 0.0};
    cplx sum = term;
    for (int k = 1; k <= 200; ++k) {
        term *= q / static_cast<double>(k) / static_cast<double>(k);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Asymptotic tails for large |z| with Re z >= 0:
//   I0(z) ~ [e^z S+(z) + i sgn(Im z) e^-z S-(z)] / sqrt(2 pi z)
// where S+ has all-positive coefficients prod (2j-1)^2 / (k! (8z)^k)
// and S- alternates. Truncated at the smallest term.
inline void i0_asym_tails(cplx z, cplx& sp, cplx& sm) {
    const cplx inv8z = 1.0 / (8.0 * z);
    cplx term{1.0, 0.0};
    sp = term;
    sm = term;
    double prev = 1.0;
    for (int k = 1; k <= 24; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / static_cast<double>(k) * inv8z;
        const double mag = std::abs(term);
        if (mag >= prev) break;
        prev = mag;
        sp += term;
        sm += (k % 2 ? -term : term);
        if (mag < 1e-17) break;
    }
}

inline cplx reflection_unit(cplx z) {
    return z.imag() >= 0.0 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
}

inline constexpr double i0_series_radius = 20.0;
inline constexpr double i0_overflow_edge = 700.0;

}  // namespace detail

// I0(z) for complex z. Throws std::overflow_error once e^{|Re z|} would
// leave double range; use bessel_i0_ratio for those magnitudes.
inline cplx bessel_i0(cplx z) {
    if (z.real() < 0.0) z = -z;
    if (std::abs(z) < detail::i0_series_radius) return detail::i0_series(z);
    if (z.real() > detail::i0_overflow_edge)
        throw std::overflow_error("bessel_i0: result not representable, use bessel_i0_ratio");
    cplx sp, sm;
    detail::i0_asym_tails(z, sp, sm);
    const cplx refl = detail::reflection_unit(z);
    return (std::exp(z) * sp + refl * std::exp(-z) * sm) / std::sqrt(two_pi * z);
}

// log I0(x) for real x. Never overflows.
inline double log_bessel_i0(double x) {
    x = std::abs(x);
    if (x < detail::i0_series_radius) return std::log(detail::i0_series(cplx{x, 0.0}).real());
    cplx sp, sm;
    detail::i0_asym_tails(cplx{x, 0.0}, sp, sm);
    return x + std::log(sp.real()) - 0.5 * std::log(two_pi * x);
}

// I0(z) / I0(k) for complex z and real k > 0, computed in the log domain
// so both numerator and denominator may individually overflow.
inline cplx bessel_i0_ratio(cplx z, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("bessel_i0_ratio: k must be positive");
    if (z.imag() == 0.0 && z.real() == k) return {1.0, 0.0};
    const double lk = log_bessel_i0(k);
    if (z.real() < 0.0) z = -z;
    if (std::abs(z) < detail::i0_series_radius) return detail::i0_series(z) * std::exp(-lk);
    cplx sp, sm;
    detail::i0_asym_tails(z, sp, sm);
    const cplx refl = detail::reflection_unit(z);
    const cplx root = std::sqrt(two_pi * z);
    return (std::exp(z - lk) * sp + refl * std::exp(-z - lk) * sm) / root;
}

inline double von_mises_pdf(double alpha, double mu, double k) {
    return std::exp(k * std::cos(alpha - mu) - log_bessel_i0(k)) / two_pi;
}

// P(Z >= z) for standard normal Z.
inline double normal_tail_upper(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

// 53-bit uniform draw in [0, 1) from a 64-bit generator. Spelled out by
// hand because std::uniform_real_distribution is not bit-identical
// across standard libraries.
template <typename G>
double uniform_unit(G& g) {
    return static_cast<double>(g() >> 11) * 0x1p-53;
}

// Standard normal draw via Box-Muller, same portability rationale.
template <typename G>
double standard_normal(G& g) {
    const double u1 = (static_cast<double>(g() >> 11) + 1.0) * 0x1p-53;
    const double u2 = uniform_unit(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

// Midpoint rule over [-pi, pi] with interval doubling until two successive
// refinements agree. Intended for smooth periodic integrands, where the
// equispaced rule converges spectrally.
template <typename F>
cplx integrate_periodic(F&& f, Tolerance tol = {}) {
    auto eval = [&](long m) {
        const double h = two_pi / static_cast<double>(m);
        cplx s{0.0, 0.0};
        for (long i = 0; i < m; ++i) s += f(-pi + (static_cast<double>(i) + 0.5) * h);
        return s * h;
    };
    long n = 16;
    cplx prev = eval(n);
    while (n <= (1L << 22)) {
        n *= 2;
        const cplx cur = eval(n);
        if (std::abs(cur - prev) <= std::max(tol.abs_tol, tol.rel_tol * std::abs(cur))) return cur;
        prev = cur;
    }
    throw std::runtime_error("integrate_periodic: no convergence");
}

namespace detail {

template <typename F>
double simpson_split(F& f, double a, double m, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_split(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_split(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature on [a, b].
template <typename F>
double integrate_adaptive(F&& f, double a, double b, Tolerance tol = {}) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double t = 0.1 * std::max(tol.abs_tol, tol.rel_tol * std::abs(whole));
    return detail::simpson_split(f, a, m, b, fa, fm, fb, whole, t, 40);
}

// Smallest tau in (0, tau_max] where f drops below `level`, assuming
// f(0) >= level. A fixed scan locates the first bracketing step, then
// bisection tightens it; the scan pitch bounds how fine an oscillation
// can be resolved. Returns nullopt when no crossing is seen.
template <typename F>
std::optional<double> find_first_crossing(F&& f, double level, double tau_max,
                                          Tolerance tol = {}, int scan_steps = 4096) {
    if (!(tau_max > 0.0)) throw std::invalid_argument("find_first_crossing: tau_max must be positive");
    const double step = tau_max / static_cast<double>(scan_steps);
    double lo = 0.0;
    double hi = 0.0;
    for (int i = 1; i <= scan_steps; ++i) {
        const double t = static_cast<double>(i) * step;
        if (f(t) < level) {
            lo = static_cast<double>(i - 1) * step;
            hi = t;
            break;
        }
    }
    if (hi == 0.0) return std::nullopt;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < level ? hi : lo) = mid;
        if (hi - lo <= std::max(tol.abs_tol, tol.rel_tol * hi)) break;
    }
    return 0.5 * (lo + hi);
}

// E[f(X)] for X ~ N(mean, sd^2), by quadrature over mean +- 10 sd.
template <typename F>
double gaussian_expectation(F&& f, double mean, double sd, Tolerance tol = {}) {
    if (sd < 0.0) throw std::invalid_argument("gaussian_expectation: sd must be nonnegative");
    if (sd == 0.0) return f(mean);
    auto g = [&](double x) {
        const double z = (x - mean) / sd;
        return f(x) * std::exp(-0.5 * z * z);
    };
    return integrate_adaptive(g, mean - 10.0 * sd, mean + 10.0 * sd, tol) / (sd * std::sqrt(two_pi));
}

}  // namespace dirchan
