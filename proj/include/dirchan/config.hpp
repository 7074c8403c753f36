#pragma once

// Plain-text key=value run configuration and CSV output with a
// manifest echo of every resolved parameter.

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dirchan/scenario.hpp"

namespace dirchan {

// Everything a run can be configured with. Angles in degrees here;
// conversion to radians happens once, in the *_from helpers below.
struct RunParams {
    double speed_mps = 30.0;
    double carrier_ghz = 60.0;
    double distance_m = 50.0;
    double scatter_radius_m = 0.5;
    double pointing_deg = 80.0;
    double rician_k = 0.0;
    double beamwidth_deg = 10.0;
    double lobe_mean_deg = 34.8;
    double lobe_std_deg = 25.7;
    double lobe_min_deg = 1.0;
};

struct ConfigKey {
    const char* name;
    double RunParams::*field;
};

inline const std::array<ConfigKey, 10>& config_schema() {
    static const std::array<ConfigKey, 10> keys{{
        {"speed_mps", &RunParams::speed_mps},
        {"carrier_ghz", &RunParams::carrier_ghz},
        {"distance_m", &RunParams::distance_m},
        {"scatter_radius_m", &RunParams::scatter_radius_m},
        {"pointing_deg", &RunParams::pointing_deg},
        {"rician_k", &RunParams::rician_k},
        {"beamwidth_deg", &RunParams::beamwidth_deg},
        {"lobe_mean_deg", &RunParams::lobe_mean_deg},
        {"lobe_std_deg", &RunParams::lobe_std_deg},
        {"lobe_min_deg", &RunParams::lobe_min_deg},
    }};
    return keys;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace detail

// Parses "key = value" lines. '#' starts a comment, blank lines are
// skipped. Values are validated against the schema by apply_config.
inline std::vector<std::pair<std::string, double>> parse_config_text(const std::string& text) {
    std::vector<std::pair<std::string, double>> entries;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view body(line);
        if (const auto hash = body.find('#'); hash != std::string_view::npos)
            body = body.substr(0, hash);
        body = detail::trim(body);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key(detail::trim(body.substr(0, eq)));
        const std::string_view raw = detail::trim(body.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        double value = 0.0;
        const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), value);
        if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
            throw std::invalid_argument("config value for '" + key + "' is not a number: \"" +
                                        std::string(raw) + "\"");
        entries.emplace_back(key, value);
    }
    return entries;
}

inline void apply_config(RunParams& p,
                         const std::vector<std::pair<std::string, double>>& entries) {
    for (const auto& [key, value] : entries) {
        bool known = false;
        for (const auto& k : config_schema()) {
            if (key == k.name) {
                p.*(k.field) = value;
                known = true;
                break;
            }
        }
        if (!known) throw std::invalid_argument("unknown config key: '" + key + "'");
    }
}

inline RunParams load_run_params(const std::string& path, RunParams defaults) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config(defaults, parse_config_text(buf.str()));
    return defaults;
}

inline Scenario scenario_from(const RunParams& p) {
    const double mu = p.pointing_deg * pi / 180.0;
    return make_scenario(p.speed_mps, p.carrier_ghz * 1.0e9, p.distance_m, p.scatter_radius_m,
                         mu, mu, p.rician_k);
}

inline Beam beam_from(const RunParams& p) { return make_beam(p.beamwidth_deg * pi / 180.0); }

inline SpatialLobeModel lobes_from(const RunParams& p) {
    const double d = pi / 180.0;
    return {p.lobe_mean_deg * d, p.lobe_std_deg * d, p.lobe_min_deg * d};
}

// Locale-independent shortest representation with 9 significant digits.
inline std::string format_number(double v) {
    std::array<char, 48> buf;
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 9);
    return std::string(buf.data(), res.ptr);
}

// A rectangular result table. write() emits the manifest as '#' comment
// lines, then the header row, then the data.
class CsvTable {
public:
    void add_manifest(std::string key, std::string value) {
        manifest_.emplace_back(std::move(key), std::move(value));
    }
    void add_manifest(std::string key, double value) {
        manifest_.emplace_back(std::move(key), format_number(value));
    }
    void add_manifest(std::string key, int value) {
        manifest_.emplace_back(std::move(key), std::to_string(value));
    }
    void add_manifest(std::string key, std::uint64_t value) {
        manifest_.emplace_back(std::move(key), std::to_string(value));
    }
    void add_manifest_params(const RunParams& p) {
        for (const auto& k : config_schema()) add_manifest(k.name, p.*(k.field));
    }

    void set_columns(std::vector<std::string> names) { columns_ = std::move(names); }

    void add_row(std::vector<double> row) {
        if (row.size() != columns_.size())
            throw std::logic_error("CsvTable: row width does not match header");
        rows_.push_back(std::move(row));
    }

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& manifest() const { return manifest_; }

    void write(std::ostream& out) const {
        for (const auto& [key, value] : manifest_) out << "# " << key << " = " << value << "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i)
            out << (i ? "," : "") << columns_[i];
        out << "\n";
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << format_number(row[i]);
            out << "\n";
        }
    }

    std::string to_string() const {
        std::ostringstream out;
        write(out);
        return out.str();
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        write(out);
        if (!out) throw std::runtime_error("failed writing output file: " + path);
    }

private:
    std::vector<std::pair<std::string, std::string>> manifest_;
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

}  // namespace dirchan
