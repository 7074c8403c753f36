#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "dirchan/config.hpp"

using namespace dirchan;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

TEST_CASE("parser handles comments, blanks, and whitespace") {
    const auto entries = parse_config_text(
        "# full-line comment\n"
        "\n"
        "  speed_mps = 12.5  # trailing comment\n"
        "\tcarrier_ghz=28\n"
        "pointing_deg = -45\n");
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].first == "speed_mps");
    CHECK(entries[0].second == 12.5);
    CHECK(entries[1].first == "carrier_ghz");
    CHECK(entries[1].second == 28.0);
    CHECK(entries[2].second == -45.0);
}

TEST_CASE("parser accepts scientific notation") {
    const auto entries = parse_config_text("scatter_radius_m = 5e-1\n");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].second == 0.5);
}

TEST_CASE("parser rejects malformed lines") {
    CHECK_THROWS_WITH(parse_config_text("just words\n"), ContainsSubstring("expected key=value"));
    CHECK_THROWS_WITH(parse_config_text("a=1\n= 3\n"), ContainsSubstring("line 2"));
    CHECK_THROWS_WITH(parse_config_text("speed_mps = fast\n"),
                      ContainsSubstring("'speed_mps'") && ContainsSubstring("not a number"));
    CHECK_THROWS_WITH(parse_config_text("speed_mps = 3 0\n"), ContainsSubstring("not a number"));
}

TEST_CASE("apply_config sets schema fields and rejects unknown keys") {
    RunParams p;
    apply_config(p, {{"speed_mps", 15.0}, {"lobe_std_deg", 0.0}, {"beamwidth_deg", 5.0}});
    CHECK(p.speed_mps == 15.0);
    CHECK(p.lobe_std_deg == 0.0);
    CHECK(p.beamwidth_deg == 5.0);
    CHECK(p.carrier_ghz == 60.0);
    CHECK_THROWS_WITH(apply_config(p, {{"bandwidth", 1.0}}),
                      ContainsSubstring("unknown config key: 'bandwidth'"));
}

TEST_CASE("scenario and beam construction from run parameters") {
    RunParams p;
    p.pointing_deg = 90.0;
    const Scenario s = scenario_from(p);
    CHECK(s.doppler_hz == 6000.0);
    CHECK(s.dr_lambda == 100.0);
    CHECK(s.d_lambda == 10000.0);
    CHECK(s.los_aoa == s.pointing_mu);
    CHECK_THAT(beam_from(p).concentration, WithinRel(1.0 / std::pow(pi / 18.0, 2), 1e-12));
    const SpatialLobeModel m = lobes_from(p);
    CHECK_THAT(m.mean_width, WithinRel(34.8 * pi / 180.0, 1e-12));
    CHECK_THAT(m.sd_width, WithinRel(25.7 * pi / 180.0, 1e-12));
}

TEST_CASE("numbers render with nine significant digits") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(6000.0) == "6000");
    CHECK(format_number(0.25) == "0.25");
    CHECK(format_number(-0.5) == "-0.5");
    CHECK(format_number(0.15303891484949048) == "0.153038915");
    CHECK(format_number(1.0 / (128.0 * 6000.0)) == "1.30208333e-06");
    CHECK(format_number(14.306482539614944) == "14.3064825");
    CHECK(format_number(2.0 / 3.0) == "0.666666667");
    CHECK(format_number(1e9) == "1e+09");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("csv table emits manifest, header, then rows") {
    CsvTable t;
    t.add_manifest("experiment", std::string("demo"));
    t.add_manifest("seed", std::uint64_t{7});
    t.add_manifest("spacing", 64);
    t.add_manifest("threshold", 0.5);
    t.set_columns({"a", "b"});
    t.add_row({1.0, 0.5});
    t.add_row({2.0, std::numeric_limits<double>::quiet_NaN()});
    CHECK(t.to_string() ==
          "# experiment = demo\n"
          "# seed = 7\n"
          "# spacing = 64\n"
          "# threshold = 0.5\n"
          "a,b\n"
          "1,0.5\n"
          "2,nan\n");
    CHECK_THROWS_AS(t.add_row({1.0}), std::logic_error);
}

TEST_CASE("manifest echo covers every schema key") {
    RunParams p;
    p.rician_k = 2.0;
    CsvTable t;
    t.add_manifest_params(p);
    REQUIRE(t.manifest().size() == config_schema().size());
    bool saw_k = false;
    for (const auto& [key, value] : t.manifest()) {
        if (key == "rician_k") {
            saw_k = true;
            CHECK(value == "2");
        }
    }
    CHECK(saw_k);
}

TEST_CASE("load_run_params reads overrides from disk") {
    const auto path = std::filesystem::temp_directory_path() / "dirchan_config_test.txt";
    {
        std::ofstream out(path);
        out << "pointing_deg = 10\nrician_k = 1\n";
    }
    const RunParams p = load_run_params(path.string(), RunParams{});
    CHECK(p.pointing_deg == 10.0);
    CHECK(p.rician_k == 1.0);
    CHECK(p.speed_mps == 30.0);
    std::filesystem::remove(path);
    CHECK_THROWS_WITH(load_run_params(path.string(), RunParams{}),
                      ContainsSubstring("cannot open config file"));
}
