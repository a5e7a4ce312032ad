#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratchet/params.hpp"

namespace ratchet {

enum class Scenario { fig1, fig2, fig3, fig4, appendix, custom };

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Everything a run or sweep needs. Phases are entered as phi / 2 pi and
/// stored in radians in `params`; scan lists hold phi / 2 pi values.
struct RunConfig {
    Scenario scenario = Scenario::custom;
    SystemParams params;
    double phi_over_2pi = 0.0;  // source of params.ratchet_phase
    std::size_t grid_n = 2048;
    int kicks = 100;
    std::vector<double> phi_scan;
    std::vector<double> g_scan;
    std::vector<double> alpha_scan;
    std::vector<double> hbar_scan;
    std::size_t n_traj = 10000;
    int n_max = 0;  // 0 selects N/2 - 1
    int portrait_time = 10;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "ratchet_out";
    double avg_lo = 500.0;
    double avg_hi = 1000.0;
    double fit_lo = 20.0;
    double fit_hi = 100.0;
    std::size_t spectrum_window = 4096;
    std::optional<double> alias_abort;
    unsigned workers = 1;

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    /// Canonical key/value echo, in a fixed key order.
    [[nodiscard]] KeyValues to_key_values() const;
};

/// Parses `key = value` lines. '#' and ';' start comments; blank lines and
/// `[section]` headers are ignored. Throws ConfigError on malformed lines.
KeyValues parse_key_values(const std::string& text);
KeyValues load_key_values(const std::filesystem::path& path);

/// Sets one key. Unknown keys and unparsable values throw ConfigError.
/// `hbar = 4pi` selects the exact resonance.
void apply_key(RunConfig& config, const std::string& key, const std::string& value);

/// Parameter defaults for a scenario.
RunConfig scenario_defaults(Scenario scenario);

/// Builds a config: scenario defaults, then the file, then command-line
/// overrides. The scenario itself is read from the overrides first, then
/// the file, falling back to `fallback`.
RunConfig build_config(const KeyValues& file_values, const KeyValues& overrides,
                       Scenario fallback = Scenario::custom);

/// Formats a double with 17 significant digits.
std::string format_double(double value);

}  // namespace ratchet
