#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dirchan/coherence.hpp"

using Catch::Matchers::WithinRel;

namespace {

double deg(double d) { return d * dirchan::pi / 180.0; }

dirchan::Scenario scen(double mu_deg, double dr_m = 0.5, double d_m = 10.0,
                       double alos_deg = 0.0) {
    return dirchan::make_scenario(30.0, 60e9, d_m, dr_m, deg(mu_deg), deg(alos_deg));
}

}  // namespace

TEST_CASE("coherence_time_numeric finds the envelope half-level point") {
    const auto beam = dirchan::make_beam_from_concentration(50.0);

    const auto t80 = dirchan::coherence_time_numeric(scen(80.0), beam);
    REQUIRE(t80.has_value());
    REQUIRE_THAT(*t80, WithinRel(0.00022422546273489127, 1e-6));

    const auto t10 = dirchan::coherence_time_numeric(scen(10.0), beam);
    REQUIRE(t10.has_value());
    REQUIRE_THAT(*t10, WithinRel(0.0015431771587048962, 1e-6));

    SECTION("slow envelopes need a longer horizon") {
        const auto wide = dirchan::make_beam(deg(30.0));
        const auto s = scen(1.0);
        const auto t = dirchan::coherence_time_numeric(s, wide, 0.5, 3000.0 / s.doppler_hz);
        REQUIRE(t.has_value());
        REQUIRE_THAT(*t, WithinRel(0.0003443349494280934, 1e-6));
    }
    SECTION("no crossing inside the horizon") {
        const auto t = dirchan::coherence_time_numeric(scen(80.0), beam, 0.5, 1e-6);
        REQUIRE_FALSE(t.has_value());
    }
    SECTION("level must be a fraction") {
        REQUIRE_THROWS_AS(dirchan::coherence_time_numeric(scen(80.0), beam, 1.5),
                          std::invalid_argument);
    }
}

TEST_CASE("closed-form coherence times match the frozen references") {
    const auto th10 = dirchan::make_beam(deg(10.0));

    SECTION("small pointing angle") {
        REQUIRE_THAT(dirchan::coherence_time_small_angle(scen(10.0), th10),
                     WithinRel(0.003336688025712558, 1e-12));
    }
    SECTION("doppler only") {
        REQUIRE_THAT(dirchan::coherence_time_doppler_only(th10, 6000.0),
                     WithinRel(0.003372560705234251, 1e-12));
        REQUIRE_THAT(dirchan::coherence_time_doppler_only(dirchan::make_beam(0.1), 6000.0),
                     WithinRel(0.010273407401024994, 1e-12));
    }
    SECTION("general pointing angle") {
        const auto t30 = dirchan::coherence_time_general(scen(30.0), th10);
        REQUIRE(t30.has_value());
        REQUIRE_THAT(*t30, WithinRel(0.0003817059788694251, 1e-12));
        const auto t80 = dirchan::coherence_time_general(scen(80.0), th10);
        REQUIRE(t80.has_value());
        REQUIRE_THAT(*t80, WithinRel(0.00018080849603540377, 1e-12));
    }
    SECTION("general form reports its invalid region") {
        const auto wide = dirchan::make_beam(deg(40.0));
        REQUIRE_FALSE(dirchan::coherence_time_general(scen(10.0), wide, 0.5).has_value());
        REQUIRE_FALSE(dirchan::coherence_time_general(scen(10.0), wide, 0.05).has_value());
    }
    SECTION("worst case over the beam") {
        const auto s = scen(90.0, 5.0);
        REQUIRE_THAT(dirchan::coherence_time_worst_case(s, dirchan::make_beam(0.1)),
                     WithinRel(0.00031176623063190246, 1e-12));
        REQUIRE_THAT(dirchan::coherence_time_worst_case(s, th10, 0.9),
                     WithinRel(6.971002443604392e-05, 1e-12));
        REQUIRE_THROWS_AS(dirchan::coherence_time_worst_case(s, dirchan::make_beam(2.0)),
                          std::domain_error);
    }
    SECTION("direct path") {
        const auto s = scen(80.0, 0.5, 50.0, 10.0);
        REQUIRE(s.d_lambda == 10000.0);
        REQUIRE_THAT(dirchan::coherence_time_los(s, dirchan::make_beam(0.1)),
                     WithinRel(1.6000156938405845, 1e-12));
        REQUIRE_THROWS_AS(dirchan::coherence_time_los(s, dirchan::make_beam(0.5), 0.01),
                          std::domain_error);
    }
}

TEST_CASE("beam coherence times") {
    SECTION("direct path") {
        const auto s = scen(10.0, 0.5, 50.0);
        REQUIRE_THAT(dirchan::beam_coherence_los(s, dirchan::make_beam(0.1)),
                     WithinRel(1.1307261228845293, 1e-12));
        REQUIRE_THROWS_AS(dirchan::beam_coherence_los(s, dirchan::make_beam(2.0), 0.01),
                          std::domain_error);
    }
    SECTION("scattered lobe of known width") {
        const auto s = scen(90.0, 5.0);
        const auto th10 = dirchan::make_beam(deg(10.0));
        REQUIRE_THAT(dirchan::beam_coherence_given_width(s, th10, deg(34.8)),
                     WithinRel(0.12706658661287848, 1e-12));
    }
    SECTION("drift saturates at a half turn") {
        const auto s = scen(90.0, 5.0);
        const auto wide = dirchan::make_beam(deg(60.0));
        REQUIRE_THAT(dirchan::beam_coherence_given_width(s, wide, deg(120.0)),
                     WithinRel(s.dr_lambda / s.doppler_hz * dirchan::pi, 1e-14));
    }
    SECTION("expectation over the lobe-width distribution") {
        const dirchan::SpatialLobeModel lobes{deg(34.8), deg(25.7), deg(1.0)};
        const auto s90 = scen(90.0, 5.0);
        REQUIRE_THAT(dirchan::beam_coherence_mean(s90, dirchan::make_beam(deg(10.0)), lobes),
                     WithinRel(0.15303891484949048, 1e-7));
        const auto s45 = scen(45.0, 5.0);
        REQUIRE_THAT(dirchan::beam_coherence_mean(s45, dirchan::make_beam(deg(5.0)), lobes),
                     WithinRel(0.2094861042335869, 1e-7));
    }
    SECTION("degenerate width distribution") {
        const dirchan::SpatialLobeModel fixed{deg(34.8), 0.0, deg(1.0)};
        const auto s = scen(90.0, 5.0);
        const auto th10 = dirchan::make_beam(deg(10.0));
        REQUIRE(dirchan::beam_coherence_mean(s, th10, fixed) ==
                dirchan::beam_coherence_given_width(s, th10, deg(34.8)));
    }
}
