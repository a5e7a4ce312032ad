#include "ratchet/scenario.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>

#include "ratchet/analytic.hpp"
#include "ratchet/classical.hpp"
#include "ratchet/fitting.hpp"
#include "ratchet/observables.hpp"
#include "ratchet/quasienergy.hpp"

#ifndef RATCHET_VERSION
#define RATCHET_VERSION "unknown"
#endif

namespace ratchet {

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string tag(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

std::string tag_compact(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", value);
    return buf;
}

std::string cell(double v) { return format_double(v); }
std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string("nan"); }
std::string cell(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("nan"); }

EvolveOptions evolve_options(const RunConfig& config) {
    EvolveOptions o;
    o.aliasing_abort = config.alias_abort;
    return o;
}

SystemParams with_phase(SystemParams p, double phi_over_2pi) {
    p.ratchet_phase = kTwoPi * phi_over_2pi;
    return p;
}

SystemParams with_hbar(SystemParams p, double hbar) {
    p.hbar = hbar;
    p.resonant = false;
    return p;
}

/// Records every kick and keeps momentum distributions at the requested kicks.
struct SnapshotRun {
    TimeSeries series;
    EvolutionReport report;
    std::map<int, std::vector<MomentumBin>> snapshots;
    WaveState final_state;
};

SnapshotRun run_with_snapshots(const AngularGrid& grid, const SystemParams& params, int kicks,
                               const std::vector<int>& snapshot_times, const EvolveOptions& options) {
    WaveState state = init_even_state(grid);
    SeriesRecorder recorder(params);
    std::map<int, std::vector<MomentumBin>> snaps;
    auto observer = [&](int t, const WaveState& s) {
        recorder(t, s);
        for (int st : snapshot_times) {
            if (st == t) snaps[t] = momentum_distribution(s);
        }
    };
    EvolutionReport report = evolve(state, params, kicks, observer, options);
    return {recorder.take(), report, std::move(snaps), std::move(state)};
}

class ScenarioContext {
public:
    explicit ScenarioContext(const RunConfig& config) : config_(config) {}

    const RunConfig& config() const { return config_; }
    const std::filesystem::path& dir() const { return config_.output_dir; }

    void record(OutputRecord r) { outputs_.push_back(std::move(r)); }
    void absorb(const EvolutionReport& r) { diag_.absorb(r); }
    void note(std::string n) { diag_.notes.push_back(std::move(n)); }

    std::vector<OutputRecord> take_outputs() { return std::move(outputs_); }
    RunDiagnostics take_diagnostics() { return std::move(diag_); }

    SnapshotRun run(const SystemParams& params, std::size_t grid_n, int kicks,
                    const std::vector<int>& snapshots = {}) {
        const AngularGrid grid = make_grid(grid_n, params.hbar);
        SnapshotRun r = run_with_snapshots(grid, params, kicks, snapshots, evolve_options(config_));
        absorb(r.report);
        return r;
    }

private:
    const RunConfig& config_;
    std::vector<OutputRecord> outputs_;
    RunDiagnostics diag_;
};

void scenario_fig1(ScenarioContext& ctx) {
    const auto& c = ctx.config();
    CsvTable current{{"alpha", "phi_over_2pi", "t", "p_mean", "p_mean_theory", "p2_mean", "p2_mean_theory"}, {}};
    for (double alpha : c.alpha_scan) {
        for (double phi : c.phi_scan) {
            SystemParams p = with_phase(c.params, phi);
            p.ratchet_amplitude = alpha;
            auto run = ctx.run(p, c.grid_n, c.kicks, {c.kicks});
            const std::string stem = "alpha" + tag_compact(alpha) + "_phi" + tag(phi);
            ctx.record(emit_series(run.series, ctx.dir(), "series_" + stem + ".csv"));
            ctx.record(emit_distribution(run.snapshots.at(c.kicks), ctx.dir(),
                                         "distribution_" + stem + "_t" + std::to_string(c.kicks) + ".csv"));
            const double t = c.kicks;
            current.add_row({cell(alpha), cell(phi), std::to_string(c.kicks), cell(run.series.p_mean.back()),
                             cell(analytic::predict_current(p, t)), cell(run.series.p2_mean.back()),
                             cell(analytic::predict_energy(p, t))});
        }
    }
    ctx.record(emit_table(current, ctx.dir(), "current.csv"));
}

void scenario_fig2(ScenarioContext& ctx) {
    const auto& c = ctx.config();
    for (double alpha : c.alpha_scan) {
        for (double g : c.g_scan) {
            SystemParams p = c.params;
            p.ratchet_amplitude = alpha;
            p.interaction = g;
            auto run = ctx.run(p, c.grid_n, c.kicks);
            ctx.record(emit_series(run.series, ctx.dir(),
                                   "series_alpha" + tag_compact(alpha) + "_g" + tag_compact(g) + ".csv"));
        }
    }
    CsvTable rates{{"phi_over_2pi", "g", "G_fit", "G_theory", "R_fit", "R_theory"}, {}};
    for (double g : c.g_scan) {
        for (double phi : c.phi_scan) {
            SystemParams p = with_phase(c.params, phi);
            p.interaction = g;
            auto run = ctx.run(p, c.grid_n, c.kicks);
            const auto G = fit_quadratic_rate(run.series.time, run.series.p2_mean, c.fit_lo, c.fit_hi);
            const auto R = fit_quadratic_rate(run.series.time, run.series.otoc_var, c.fit_lo, c.fit_hi);
            rates.add_row({cell(phi), cell(g), cell(G.value), cell(analytic::growth_rate_G(p)), cell(R.value),
                           cell(analytic::growth_rate_R(p))});
        }
    }
    ctx.record(emit_table(rates, ctx.dir(), "growth_rates.csv"));
}

void scenario_fig3(ScenarioContext& ctx) {
    const auto& c = ctx.config();
    // Time series at the configured hbar.
    for (double g : c.g_scan) {
        SystemParams p = c.params;
        p.interaction = g;
        auto run = ctx.run(p, c.grid_n, c.kicks);
        ctx.record(emit_series(run.series, ctx.dir(), "series_g" + tag_compact(g) + ".csv"));
    }

    CsvTable scan{{"hbar", "g", "grid_n", "t_c", "t_sat", "gamma_fit", "gamma_stderr", "r_squared", "gamma_theory"},
                  {}};
    const std::vector<double> hbars = c.hbar_scan.empty() ? std::vector<double>{c.params.hbar} : c.hbar_scan;
    for (double hbar : hbars) {
        const std::size_t n = scaled_grid_size(c.grid_n, hbar);
        SystemParams base = with_hbar(c.params, hbar);
        base.interaction = 0.0;
        auto baseline = ctx.run(base, n, c.kicks);
        const AngularGrid grid = make_grid(n, hbar);
        for (double g : c.g_scan) {
            if (g == 0.0) continue;
            SystemParams p = base;
            p.interaction = g;
            auto run = ctx.run(p, n, c.kicks);
            const auto growth =
                fit_growth_beyond_critical(run.series.time, run.series.p2_mean, baseline.series.p2_mean, grid);
            std::optional<double> rate, err, r2;
            if (growth.rate) {
                rate = growth.rate->value;
                err = growth.rate->stderr_value;
                r2 = growth.rate->r_squared;
            }
            std::optional<int> tc;
            if (growth.critical) tc = growth.critical->time;
            scan.add_row({cell(hbar), cell(g), std::to_string(n), cell(tc), cell(growth.saturation), cell(rate),
                          cell(err), cell(r2), cell(analytic::gamma_theory(g, hbar))});
        }
    }
    ctx.record(emit_table(scan, ctx.dir(), "gamma_scan.csv"));
}

void scenario_fig4(ScenarioContext& ctx) {
    const auto& c = ctx.config();
    const int kicks = std::max<int>(c.kicks, static_cast<int>(c.spectrum_window) - 1);
    CsvTable loc{{"phi_over_2pi", "t", "xi", "xi_stderr", "r_squared", "points"}, {}};
    CsvTable avg{{"phi_over_2pi", "p2_time_avg"}, {}};
    CsvTable peaks{{"phi_over_2pi", "peaks_above_5x_median", "merged_weight_1", "merged_weight_2",
                    "merged_weight_3"},
                   {}};
    for (double phi : c.phi_scan) {
        const SystemParams p = with_phase(c.params, phi);
        std::vector<int> snaps;
        for (int t : {250, 500}) {
            if (t <= kicks) snaps.push_back(t);
        }
        auto run = ctx.run(p, c.grid_n, kicks, snaps);
        const std::string stem = "phi" + tag(phi);
        ctx.record(emit_series(run.series, ctx.dir(), "series_" + stem + ".csv"));
        for (const auto& [t, bins] : run.snapshots) {
            ctx.record(emit_distribution(bins, ctx.dir(), "distribution_" + stem + "_t" + std::to_string(t) + ".csv"));
            try {
                const auto fit = fit_localization_length(bins, p.hbar);
                loc.add_row({cell(phi), std::to_string(t), cell(fit.value), cell(fit.stderr_value),
                             cell(fit.r_squared), std::to_string(fit.points)});
            } catch (const std::exception& e) {
                ctx.note("localization fit phi/2pi=" + tag(phi) + " t=" + std::to_string(t) + ": " + e.what());
                loc.add_row({cell(phi), std::to_string(t), "nan", "nan", "nan", "0"});
            }
        }
        const double lo = c.avg_lo;
        const double hi = std::min<double>(c.avg_hi, c.kicks);
        avg.add_row({cell(phi), cell(time_averaged_energy(run.series.time, run.series.p2_mean, lo, hi))});

        const auto spectrum = quasienergy_spectrum(run.series.autocorr, c.spectrum_window);
        ctx.record(emit_spectrum(spectrum, ctx.dir(), "spectrum_" + stem + ".csv"));
        const auto strong = find_peaks(spectrum);
        const auto merged = merged_peaks(spectrum);
        std::vector<std::string> row{cell(phi), std::to_string(strong.size())};
        for (std::size_t i = 0; i < 3; ++i) row.push_back(i < merged.size() ? cell(merged[i].weight) : "nan");
        peaks.add_row(std::move(row));
    }
    ctx.record(emit_table(loc, ctx.dir(), "localization.csv"));
    ctx.record(emit_table(avg, ctx.dir(), "time_average.csv"));
    ctx.record(emit_table(peaks, ctx.dir(), "peaks.csv"));
}

void scenario_appendix(ScenarioContext& ctx) {
    const auto& c = ctx.config();
    const AngularGrid grid = make_grid(c.grid_n, c.params.hbar);
    const int n_max = c.n_max > 0 ? c.n_max : static_cast<int>(c.grid_n / 2) - 1;

    SystemParams base = c.params;
    base.interaction = 0.0;
    auto baseline = ctx.run(base, c.grid_n, c.kicks);

    CsvTable rates{{"g", "t_c", "t_sat", "gamma_quantum", "gamma_classical", "gamma_theory", "occupancy",
                    "max_tail_fraction"},
                   {}};
    for (double g : c.g_scan) {
        SystemParams p = c.params;
        p.interaction = g;
        std::vector<PhasePoint> portrait;
        auto capture = [&](int t, const ClassicalEnsemble& e) {
            if (t == c.portrait_time) portrait = phase_portrait(e);
        };
        auto hybrid = hybrid_evolve(init_even_state(grid), p, c.kicks, n_max, init_ensemble(c.n_traj, c.seed),
                                    capture);
        ctx.absorb(hybrid.report);

        CsvTable energies{{"t", "p2_quantum", "p2_classical"}, {}};
        for (std::size_t i = 0; i < hybrid.quantum.size(); ++i) {
            energies.add_row({std::to_string(hybrid.quantum.time[i]), cell(hybrid.quantum.p2_mean[i]),
                              cell(hybrid.classical_energy[i])});
        }
        ctx.record(emit_table(energies, ctx.dir(), "classical_g" + tag_compact(g) + ".csv"));
        if (c.portrait_time == 0) portrait = phase_portrait(init_ensemble(c.n_traj, c.seed));
        ctx.record(emit_portrait(portrait, ctx.dir(),
                                 "portrait_g" + tag_compact(g) + "_t" + std::to_string(c.portrait_time) + ".csv"));

        const auto growth =
            fit_growth_beyond_critical(hybrid.quantum.time, hybrid.quantum.p2_mean, baseline.series.p2_mean, grid);
        std::optional<double> gq, gc;
        std::optional<int> tc;
        if (growth.critical) tc = growth.critical->time;
        if (growth.rate) {
            gq = growth.rate->value;
            gc = fit_exponential_rate(hybrid.quantum.time, hybrid.classical_energy, growth.rate->window_lo,
                                      growth.rate->window_hi)
                     .value;
        }
        rates.add_row({cell(g), cell(tc), cell(growth.saturation), cell(gq), cell(gc),
                       cell(analytic::gamma_theory(g, p.hbar)),
                       portrait.empty() ? "nan" : cell(portrait_occupancy(portrait)),
                       cell(hybrid.max_tail_fraction)});
        if (hybrid.max_tail_fraction > 1e-6) {
            ctx.note("g=" + tag_compact(g) + ": Fourier tail beyond n_max carries " +
                     format_double(hybrid.max_tail_fraction) + " of the force norm");
        }
    }
    ctx.record(emit_table(rates, ctx.dir(), "rates.csv"));
}

void scenario_custom(ScenarioContext& ctx) {
    const auto& c = ctx.config();
    auto run = ctx.run(c.params, c.grid_n, c.kicks, {c.kicks});
    ctx.record(emit_series(run.series, ctx.dir(), "series.csv"));
    ctx.record(emit_distribution(run.snapshots.at(c.kicks), ctx.dir(), "distribution_final.csv"));
    if (run.series.size() >= c.spectrum_window) {
        ctx.record(emit_spectrum(quasienergy_spectrum(run.series.autocorr, c.spectrum_window), ctx.dir(),
                                 "spectrum.csv"));
    }
}

nlohmann::ordered_json manifest_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = "ratchet";
    j["version"] = m.version;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.config) cfg[k] = v;
    j["config"] = cfg;
    j["started_utc"] = m.started_utc;
    j["finished_utc"] = m.finished_utc;
    j["status"] = m.complete ? "complete" : "partial";
    if (!m.error.empty()) j["error"] = m.error;
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& o : m.outputs) {
        j["outputs"].push_back({{"file", o.file}, {"sha256", o.sha256}, {"bytes", o.bytes}});
    }
    j["diagnostics"] = {{"runs", m.diagnostics.runs},
                        {"max_norm_drift", m.diagnostics.max_norm_drift},
                        {"max_edge_probability", m.diagnostics.max_edge_probability},
                        {"aliasing_flag", m.diagnostics.aliasing_flag},
                        {"notes", m.diagnostics.notes}};
    return j;
}

template <typename Body>
RunManifest run_with_manifest(const RunConfig& config, Body&& body) {
    config.validate();
    RunManifest manifest;
    manifest.config = config.to_key_values();
    manifest.version = RATCHET_VERSION;
    manifest.started_utc = utc_now();
    ScenarioContext ctx(config);
    try {
        body(ctx);
        manifest.complete = true;
    } catch (const std::exception& e) {
        manifest.error = e.what();
        manifest.outputs = ctx.take_outputs();
        manifest.diagnostics = ctx.take_diagnostics();
        manifest.finished_utc = utc_now();
        write_manifest(manifest, config.output_dir);
        throw;
    }
    manifest.outputs = ctx.take_outputs();
    manifest.diagnostics = ctx.take_diagnostics();
    manifest.finished_utc = utc_now();
    write_manifest(manifest, config.output_dir);
    return manifest;
}

}  // namespace

void RunDiagnostics::absorb(const EvolutionReport& report) {
    ++runs;
    max_norm_drift = std::max(max_norm_drift, report.final_norm_drift);
    max_edge_probability = std::max(max_edge_probability, report.max_edge_probability);
    aliasing_flag = aliasing_flag || report.aliasing_flag;
}

std::size_t scaled_grid_size(std::size_t configured, double hbar) {
    std::size_t n = configured;
    while (hbar * static_cast<double>(n) < 2048.0) n *= 2;
    return n;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / kManifestName, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    out << manifest_json(manifest).dump(2) << '\n';
}

std::vector<std::string> validate_manifest(const std::filesystem::path& dir) {
    std::ifstream in(dir / kManifestName);
    if (!in) return {kManifestName};
    const auto j = nlohmann::json::parse(in);
    std::vector<std::string> bad;
    for (const auto& o : j.at("outputs")) {
        const auto file = o.at("file").get<std::string>();
        const auto path = dir / file;
        if (!std::filesystem::exists(path) || file_sha256(path) != o.at("sha256").get<std::string>()) {
            bad.push_back(file);
        }
    }
    return bad;
}

RunManifest run_scenario(const RunConfig& config) {
    return run_with_manifest(config, [](ScenarioContext& ctx) {
        switch (ctx.config().scenario) {
            case Scenario::fig1: scenario_fig1(ctx); break;
            case Scenario::fig2: scenario_fig2(ctx); break;
            case Scenario::fig3: scenario_fig3(ctx); break;
            case Scenario::fig4: scenario_fig4(ctx); break;
            case Scenario::appendix: scenario_appendix(ctx); break;
            case Scenario::custom: scenario_custom(ctx); break;
        }
    });
}

}  // namespace ratchet
