#include "ratchet/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ratchet {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::fig1: return "fig1";
        case Scenario::fig2: return "fig2";
        case Scenario::fig3: return "fig3";
        case Scenario::fig4: return "fig4";
        case Scenario::appendix: return "appendix";
        case Scenario::custom: return "custom";
    }
    return "custom";
}

Scenario parse_scenario(const std::string& name) {
    static const std::map<std::string, Scenario> names = {
        {"fig1", Scenario::fig1},         {"fig2", Scenario::fig2}, {"fig3", Scenario::fig3},
        {"fig4", Scenario::fig4},         {"appendix", Scenario::appendix},
        {"custom", Scenario::custom},
    };
    auto it = names.find(name);
    if (it == names.end()) throw ConfigError("unknown scenario '" + name + "'");
    return it->second;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a number");
    }
    return v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw ConfigError("key '" + key + "': cannot parse '" + text + "' as an integer");
    }
    return v;
}

// An empty value clears the list (no scan); empty items are rejected.
std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) throw ConfigError("key '" + key + "': empty item in scan list");
        out.push_back(parse_double(key, item));
    }
    if (text.back() == ',') throw ConfigError("key '" + key + "': empty item in scan list");
    return out;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

bool is_resonance_literal(std::string v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](unsigned char c) { return std::isspace(c) || c == '*'; }),
            v.end());
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    return v == "4pi";
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"scenario", [](RunConfig& c, const std::string&, const std::string& v) { c.scenario = parse_scenario(trim(v)); }},
        {"K", [](RunConfig& c, const std::string& k, const std::string& v) { c.params.kick_strength = parse_double(k, v); }},
        {"alpha", [](RunConfig& c, const std::string& k, const std::string& v) { c.params.ratchet_amplitude = parse_double(k, v); }},
        {"phi_over_2pi", [](RunConfig& c, const std::string& k, const std::string& v) {
             c.phi_over_2pi = parse_double(k, v);
             c.params.ratchet_phase = kTwoPi * c.phi_over_2pi;
         }},
        {"g", [](RunConfig& c, const std::string& k, const std::string& v) { c.params.interaction = parse_double(k, v); }},
        {"hbar", [](RunConfig& c, const std::string& k, const std::string& v) {
             if (is_resonance_literal(v)) {
                 c.params = c.params.at_resonance();
             } else {
                 c.params.hbar = parse_double(k, v);
                 c.params.resonant = false;
             }
         }},
        {"epsilon", [](RunConfig& c, const std::string& k, const std::string& v) { c.params.translation = parse_double(k, v); }},
        {"grid_n", [](RunConfig& c, const std::string& k, const std::string& v) { c.grid_n = parse_int<std::size_t>(k, v); }},
        {"kicks", [](RunConfig& c, const std::string& k, const std::string& v) { c.kicks = parse_int<int>(k, v); }},
        {"phi_scan", [](RunConfig& c, const std::string& k, const std::string& v) { c.phi_scan = parse_list(k, v); }},
        {"g_scan", [](RunConfig& c, const std::string& k, const std::string& v) { c.g_scan = parse_list(k, v); }},
        {"alpha_scan", [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha_scan = parse_list(k, v); }},
        {"hbar_scan", [](RunConfig& c, const std::string& k, const std::string& v) { c.hbar_scan = parse_list(k, v); }},
        {"n_traj", [](RunConfig& c, const std::string& k, const std::string& v) { c.n_traj = parse_int<std::size_t>(k, v); }},
        {"n_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.n_max = parse_int<int>(k, v); }},
        {"portrait_time", [](RunConfig& c, const std::string& k, const std::string& v) { c.portrait_time = parse_int<int>(k, v); }},
        {"seed", [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = parse_int<std::uint64_t>(k, v); }},
        {"output_dir", [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = trim(v); }},
        {"avg_lo", [](RunConfig& c, const std::string& k, const std::string& v) { c.avg_lo = parse_double(k, v); }},
        {"avg_hi", [](RunConfig& c, const std::string& k, const std::string& v) { c.avg_hi = parse_double(k, v); }},
        {"fit_lo", [](RunConfig& c, const std::string& k, const std::string& v) { c.fit_lo = parse_double(k, v); }},
        {"fit_hi", [](RunConfig& c, const std::string& k, const std::string& v) { c.fit_hi = parse_double(k, v); }},
        {"spectrum_window", [](RunConfig& c, const std::string& k, const std::string& v) { c.spectrum_window = parse_int<std::size_t>(k, v); }},
        {"alias_abort", [](RunConfig& c, const std::string& k, const std::string& v) {
             if (trim(v) == "off") {
                 c.alias_abort.reset();
             } else {
                 c.alias_abort = parse_double(k, v);
             }
         }},
        {"workers", [](RunConfig& c, const std::string& k, const std::string& v) { c.workers = parse_int<unsigned>(k, v); }},
    };
    return table;
}

std::vector<double> phase_fractions(std::initializer_list<double> values) { return {values}; }

}  // namespace

void RunConfig::validate() const {
    params.validate();
    if (kicks < 0) throw ConfigError("kicks must be non-negative");
    if (grid_n < 8 || grid_n % 2 != 0) throw ConfigError("grid_n must be even and at least 8");
    if (n_traj == 0) throw ConfigError("n_traj must be positive");
    if (n_max < 0 || n_max > static_cast<int>(grid_n / 2)) throw ConfigError("n_max must lie in [0, grid_n/2]");
    if (portrait_time < 0) throw ConfigError("portrait_time must be non-negative");
    if (!(avg_lo <= avg_hi)) throw ConfigError("avg_lo must not exceed avg_hi");
    if (!(fit_lo < fit_hi)) throw ConfigError("fit_lo must be below fit_hi");
    if (spectrum_window < 256) throw ConfigError("spectrum_window must be at least 256");
    if (workers == 0) throw ConfigError("workers must be positive");
    for (double h : hbar_scan) {
        if (!(h > 0.0)) throw ConfigError("hbar_scan values must be positive");
    }
    if (output_dir.empty()) throw ConfigError("output_dir must be set");
}

KeyValues RunConfig::to_key_values() const {
    return {
        {"scenario", to_string(scenario)},
        {"K", format_double(params.kick_strength)},
        {"alpha", format_double(params.ratchet_amplitude)},
        {"phi_over_2pi", format_double(phi_over_2pi)},
        {"g", format_double(params.interaction)},
        {"hbar", params.resonant ? std::string("4pi") : format_double(params.hbar)},
        {"epsilon", format_double(params.translation)},
        {"grid_n", std::to_string(grid_n)},
        {"kicks", std::to_string(kicks)},
        {"phi_scan", join(phi_scan)},
        {"g_scan", join(g_scan)},
        {"alpha_scan", join(alpha_scan)},
        {"hbar_scan", join(hbar_scan)},
        {"n_traj", std::to_string(n_traj)},
        {"n_max", std::to_string(n_max)},
        {"portrait_time", std::to_string(portrait_time)},
        {"seed", std::to_string(seed)},
        {"output_dir", output_dir.string()},
        {"avg_lo", format_double(avg_lo)},
        {"avg_hi", format_double(avg_hi)},
        {"fit_lo", format_double(fit_lo)},
        {"fit_hi", format_double(fit_hi)},
        {"spectrum_window", std::to_string(spectrum_window)},
        {"alias_abort", alias_abort ? format_double(*alias_abort) : std::string("off")},
        {"workers", std::to_string(workers)},
    };
}

KeyValues parse_key_values(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
    }
    return out;
}

KeyValues load_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_key_values(buf.str());
}

void apply_key(RunConfig& config, const std::string& key, const std::string& value) {
    const auto& table = setters();
    auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(config, key, value);
}

RunConfig scenario_defaults(Scenario scenario) {
    RunConfig c;
    c.scenario = scenario;
    c.params = SystemParams{};
    switch (scenario) {
        case Scenario::fig1:
            c.params.interaction = 10.0;
            c.params = c.params.at_resonance();
            c.kicks = 100;
            c.grid_n = 4096;
            c.phi_scan = phase_fractions({0.0, 0.125, 1.0 / 6.0, 0.25});
            c.alpha_scan = {-2.0, 2.0};
            break;
        case Scenario::fig2:
            c.params.interaction = 10.0;
            c.params.translation = 1e-5;
            c.params = c.params.at_resonance();
            c.phi_over_2pi = 0.125;
            c.kicks = 100;
            c.grid_n = 4096;
            c.alpha_scan = {-2.0, 2.0};
            c.g_scan = {0.0, 1.0, 5.0, 10.0};
            for (int i = 0; i < 16; ++i) c.phi_scan.push_back(i / 16.0);
            break;
        case Scenario::fig3:
            c.params.hbar = 1.0;
            c.phi_over_2pi = 0.125;
            c.kicks = 300;
            c.grid_n = 2048;
            c.g_scan = {0.0, 0.3, 0.5, 1.0, 2.0};
            c.hbar_scan = {0.2, 0.5, 0.7, 1.0};
            break;
        case Scenario::fig4:
            c.params.hbar = 1.0;
            c.kicks = 1000;
            c.grid_n = 2048;
            for (int i = 0; i <= 20; ++i) c.phi_scan.push_back(0.025 * i);
            break;
        case Scenario::appendix:
            c.params.hbar = 1.0;
            c.phi_over_2pi = 0.125;
            c.kicks = 40;
            c.grid_n = 2048;
            c.g_scan = {2.0, 3.0};
            c.n_traj = 10000;
            c.portrait_time = 10;
            break;
        case Scenario::custom:
            break;
    }
    c.params.ratchet_phase = kTwoPi * c.phi_over_2pi;
    return c;
}

RunConfig build_config(const KeyValues& file_values, const KeyValues& overrides, Scenario fallback) {
    Scenario scenario = fallback;
    bool found = false;
    for (const auto* source : {&overrides, &file_values}) {
        for (const auto& [k, v] : *source) {
            if (k == "scenario") {
                scenario = parse_scenario(trim(v));
                found = true;
            }
        }
        if (found) break;
    }
    RunConfig config = scenario_defaults(scenario);
    for (const auto& [k, v] : file_values) apply_key(config, k, v);
    for (const auto& [k, v] : overrides) apply_key(config, k, v);
    config.scenario = scenario;
    config.validate();
    return config;
}

}  // namespace ratchet
