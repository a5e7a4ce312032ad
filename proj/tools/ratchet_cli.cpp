#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "ratchet/config.hpp"
#include "ratchet/scenario.hpp"
#include "ratchet/verification.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

// Turns leftover "--key value" / "--key=value" arguments into overrides.
ratchet::KeyValues collect_overrides(const std::vector<std::string>& extras) {
    ratchet::KeyValues out;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& arg = extras[i];
        if (arg.rfind("--", 0) != 0 || arg.size() < 3) {
            throw ratchet::ConfigError("unexpected argument '" + arg + "'");
        }
        std::string key = arg.substr(2);
        if (const auto eq = key.find('='); eq != std::string::npos) {
            out.emplace_back(key.substr(0, eq), key.substr(eq + 1));
            continue;
        }
        if (i + 1 >= extras.size()) throw ratchet::ConfigError("missing value for --" + key);
        out.emplace_back(key, extras[++i]);
    }
    return out;
}

ratchet::RunConfig load(const std::string& config_path, const std::string& scenario,
                        const std::vector<std::string>& extras) {
    ratchet::KeyValues file;
    if (!config_path.empty()) file = ratchet::load_key_values(config_path);
    auto overrides = collect_overrides(extras);
    if (!scenario.empty()) overrides.insert(overrides.begin(), {"scenario", scenario});
    return ratchet::build_config(file, overrides);
}

void summarize(const ratchet::RunManifest& m, const ratchet::RunConfig& c) {
    std::printf("%zu files written to %s (%d runs, max norm drift %.3e, max edge probability %.3e%s)\n",
                m.outputs.size(), c.output_dir.string().c_str(), m.diagnostics.runs, m.diagnostics.max_norm_drift,
                m.diagnostics.max_edge_probability, m.diagnostics.aliasing_flag ? ", aliasing flagged" : "");
    for (const auto& note : m.diagnostics.notes) std::printf("note: %s\n", note.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kicked nonlinear ratchet rotor simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", RATCHET_VERSION);

    std::string config_path, scenario;
    auto* run = app.add_subcommand("run", "Run one scenario and write its CSV files and manifest");
    run->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    run->add_option("--scenario", scenario, "fig1, fig2, fig3, fig4, appendix or custom");
    run->allow_extras();

    auto* sweep = app.add_subcommand("sweep", "Run the Cartesian product of the scan lists");
    sweep->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
    sweep->allow_extras();

    std::size_t grid_n = 4096;
    int cases = 8;
    std::uint64_t seed = 1;
    bool quiet = false;
    auto* verify = app.add_subcommand("verify", "Check resonance laws: closed form vs quadrature vs simulation");
    verify->add_option("--grid-n", grid_n, "grid size for the simulations");
    verify->add_option("--cases", cases, "number of random parameter draws");
    verify->add_option("--seed", seed, "seed for the random draws");
    verify->add_flag("--quiet", quiet, "print only the verdict");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), kExitConfig);
    }

    try {
        if (*run) {
            const auto config = load(config_path, scenario, run->remaining());
            summarize(ratchet::run_scenario(config), config);
        } else if (*sweep) {
            const auto config = load(config_path, "", sweep->remaining());
            summarize(ratchet::run_sweep(config), config);
        } else if (*verify) {
            const auto report = ratchet::verify_resonance(grid_n, cases, seed);
            const std::string text = ratchet::format_report(report);
            if (quiet) {
                std::cout << text.substr(text.rfind('\n', text.size() - 2) + 1);
            } else {
                std::cout << text;
            }
            return report.passed() ? 0 : kExitNumerical;
        }
    } catch (const ratchet::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ratchet::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
