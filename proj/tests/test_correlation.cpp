#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "dirchan/correlation.hpp"

using dirchan::cplx;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double deg(double d) { return d * dirchan::pi / 180.0; }

dirchan::Scenario near_cluster(double mu_deg) {
    return dirchan::make_scenario(30.0, 60e9, 10.0, 0.5, deg(mu_deg));
}

double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

// Reference correlation straight from the definition: geometric mean of
// the two drifted arrival spectra against the Doppler phase kernel.
cplx quadrature_corr(const dirchan::Scenario& s, const dirchan::Beam& b, double tau) {
    const double k = b.concentration;
    const double dmu = dirchan::pointing_error_nlos(s, tau);
    const double w = dirchan::two_pi * s.doppler_hz * tau;
    return dirchan::integrate_periodic([&](double a) {
        const double p1 = dirchan::von_mises_pdf(a, s.pointing_mu, k);
        const double p2 = dirchan::von_mises_pdf(a, s.pointing_mu + dmu, k);
        return std::sqrt(p1 * p2) * std::polar(1.0, -w * std::cos(a));
    });
}

}  // namespace

TEST_CASE("corr_nlos_exact against frozen references") {
    const auto beam = dirchan::make_beam_from_concentration(50.0);
    const auto s80 = near_cluster(80.0);
    REQUIRE(s80.dr_lambda == 100.0);

    REQUIRE(rel_err(dirchan::corr_nlos_exact(s80, beam, 0.1 / 6000.0),
                    cplx{0.99043509006302026, -0.10710051302465876}) < 1e-12);
    REQUIRE(rel_err(dirchan::corr_nlos_exact(s80, beam, 0.3 / 6000.0),
                    cplx{0.91684806468981015, -0.3053952253089363}) < 1e-12);

    const auto s10 = near_cluster(10.0);
    REQUIRE(rel_err(dirchan::corr_nlos_exact(s10, beam, 0.25 / 6000.0),
                    cplx{0.039394373271118334, -0.99824299753431023}) < 1e-12);

    SECTION("high concentration goes through the log-domain ratio") {
        const auto narrow = dirchan::make_beam_from_concentration(3282.8063500117437);
        const auto s = dirchan::make_scenario(30.0, 60e9, 10.0, 5.0, deg(80.0));
        REQUIRE(rel_err(dirchan::corr_nlos_exact(s, narrow, 0.02 / 6000.0),
                        cplx{0.99975953368645887, -0.02181494620857429}) < 1e-10);
    }
}

TEST_CASE("corr_nlos_exact agrees with direct quadrature") {
    const auto beam = dirchan::make_beam_from_concentration(50.0);
    for (double mu_deg : {10.0, 80.0}) {
        const auto s = near_cluster(mu_deg);
        for (double fdt : {0.05, 0.2, 0.45}) {
            const double tau = fdt / s.doppler_hz;
            const cplx closed = dirchan::corr_nlos_exact(s, beam, tau);
            REQUIRE(std::abs(closed - quadrature_corr(s, beam, tau)) < 1e-10);
        }
    }
}

TEST_CASE("corr_nlos_approx against frozen references") {
    const auto beam = dirchan::make_beam_from_concentration(50.0);
    const auto s80 = near_cluster(80.0);
    REQUIRE(rel_err(dirchan::corr_nlos_approx(s80, beam, 0.1 / 6000.0),
                    cplx{0.99040332181687846, -0.1073993446744603}) < 1e-12);
    REQUIRE(rel_err(dirchan::corr_nlos_approx(s80, beam, 0.3 / 6000.0),
                    cplx{0.91603062269525354, -0.30789015324658591}) < 1e-12);
    const auto s10 = near_cluster(10.0);
    REQUIRE(rel_err(dirchan::corr_nlos_approx(s10, beam, 0.25 / 6000.0),
                    cplx{0.039335952359737802, -0.99824708347797832}) < 1e-12);
}

TEST_CASE("both scattered forms start at unity and stay bounded") {
    const auto beam = dirchan::make_beam(0.15);
    const auto s = near_cluster(35.0);
    REQUIRE_THAT(std::abs(dirchan::corr_nlos_exact(s, beam, 0.0)), WithinRel(1.0, 1e-13));
    REQUIRE_THAT(std::abs(dirchan::corr_nlos_approx(s, beam, 0.0)), WithinRel(1.0, 1e-13));
    for (int i = 1; i <= 60; ++i) {
        const double tau = i * 0.25 / 6000.0;
        REQUIRE(std::abs(dirchan::corr_nlos_exact(s, beam, tau)) <= 1.0 + 1e-12);
        REQUIRE(std::abs(dirchan::corr_nlos_approx(s, beam, tau)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("corr_los") {
    const auto beam = dirchan::make_beam_from_concentration(50.0);
    const auto s = dirchan::make_scenario(30.0, 60e9, 10.0, 0.5, deg(80.0), deg(30.0), 1.0);
    REQUIRE(s.d_lambda == 2000.0);
    const cplx r = dirchan::corr_los(s, beam, 0.001);
    REQUIRE(rel_err(r, cplx{0.33190695487842762, -0.94328231452512523}) < 1e-12);
    REQUIRE_THAT(std::abs(r), WithinRel(0.99997187540077739, 1e-12));
    REQUIRE(std::abs(dirchan::corr_los(s, beam, 0.0) - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("corr_combined weights the two components by the Rician factor") {
    const auto beam = dirchan::make_beam_from_concentration(50.0);
    const auto s = dirchan::make_scenario(30.0, 60e9, 10.0, 0.5, deg(80.0), deg(30.0), 1.5);
    const cplx r = dirchan::corr_combined(s, beam, 0.001);
    REQUIRE(rel_err(r, cplx{0.19914416920829976, -0.56596943221693349}) < 1e-11);

    SECTION("zero Rician factor reduces to the scattered part") {
        const auto nlos_only = dirchan::make_scenario(30.0, 60e9, 10.0, 0.5, deg(80.0));
        const double tau = 0.2 / 6000.0;
        REQUIRE(dirchan::corr_combined(nlos_only, beam, tau) ==
                dirchan::corr_nlos_exact(nlos_only, beam, tau));
    }
    SECTION("approximate scattered form is selectable") {
        const double tau = 0.2 / 6000.0;
        const cplx want = (1.5 * dirchan::corr_los(s, beam, tau) +
                           dirchan::corr_nlos_approx(s, beam, tau)) /
                          2.5;
        REQUIRE(std::abs(dirchan::corr_combined(s, beam, tau, dirchan::NlosForm::approximate) -
                         want) < 1e-15);
    }
}
