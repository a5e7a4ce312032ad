#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <thread>

#include "ratchet/fitting.hpp"
#include "ratchet/observables.hpp"
#include "ratchet/scenario.hpp"

#ifndef RATCHET_VERSION
#define RATCHET_VERSION "unknown"
#endif

namespace ratchet {

namespace {

struct SweepPoint {
    double phi_over_2pi;
    double alpha;
    double g;
    double hbar;
    bool resonant;
};

struct SweepResult {
    TimeSeries series;
    EvolutionReport report;
};

std::vector<double> sorted_or(std::vector<double> values, double fallback) {
    if (values.empty()) return {fallback};
    std::sort(values.begin(), values.end());
    return values;
}

std::vector<SweepPoint> sweep_points(const RunConfig& c) {
    const auto phis = sorted_or(c.phi_scan, c.phi_over_2pi);
    const auto alphas = sorted_or(c.alpha_scan, c.params.ratchet_amplitude);
    const auto gs = sorted_or(c.g_scan, c.params.interaction);
    const bool hbar_scanned = !c.hbar_scan.empty();
    const auto hbars = sorted_or(c.hbar_scan, c.params.hbar);
    std::vector<SweepPoint> points;
    for (double phi : phis)
        for (double a : alphas)
            for (double g : gs)
                for (double h : hbars) points.push_back({phi, a, g, h, !hbar_scanned && c.params.resonant});
    return points;
}

SystemParams point_params(const RunConfig& c, const SweepPoint& pt) {
    SystemParams p = c.params;
    p.ratchet_phase = kTwoPi * pt.phi_over_2pi;
    p.ratchet_amplitude = pt.alpha;
    p.interaction = pt.g;
    p.hbar = pt.hbar;
    p.resonant = pt.resonant;
    p.validate();
    return p;
}

std::string index_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "series_%04zu.csv", i);
    return buf;
}

}  // namespace

RunManifest run_sweep(const RunConfig& config) {
    config.validate();
    RunManifest manifest;
    manifest.config = config.to_key_values();
    manifest.version = RATCHET_VERSION;

    const auto started = std::chrono::system_clock::now();
    auto stamp = [](std::chrono::system_clock::time_point tp) {
        const auto tt = std::chrono::system_clock::to_time_t(tp);
        std::tm tm{};
        gmtime_r(&tt, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return std::string(buf);
    };
    manifest.started_utc = stamp(started);

    const auto points = sweep_points(config);
    for (const auto& pt : points) point_params(config, pt);  // surface config errors before any work
    std::vector<std::optional<SweepResult>> results(points.size());
    std::vector<std::string> errors(points.size());
    std::atomic<std::size_t> next{0};
    EvolveOptions options;
    options.aliasing_abort = config.alias_abort;

    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                const SystemParams p = point_params(config, points[i]);
                const AngularGrid grid = make_grid(config.grid_n, p.hbar);
                auto run = record_evolution(init_even_state(grid), p, config.kicks, options);
                results[i] = SweepResult{std::move(run.series), run.report};
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const unsigned n_workers = std::max(1u, std::min<unsigned>(config.workers, points.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }

    // Merge strictly in tuple order so the output is independent of scheduling.
    CsvTable summary{{"index", "phi_over_2pi", "alpha", "g", "hbar", "p_mean", "p2_mean", "otoc_var", "p2_time_avg",
                      "file"},
                     {}};
    std::string first_error;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!results[i]) {
            if (first_error.empty()) first_error = "sweep point " + std::to_string(i) + ": " + errors[i];
            break;
        }
        const auto& r = *results[i];
        manifest.diagnostics.absorb(r.report);
        const std::string file = index_name(i);
        manifest.outputs.push_back(emit_series(r.series, config.output_dir, file));
        const double hi = std::min<double>(config.avg_hi, config.kicks);
        double avg = std::nan("");
        if (config.avg_lo <= hi) avg = time_averaged_energy(r.series.time, r.series.p2_mean, config.avg_lo, hi);
        const auto& pt = points[i];
        summary.add_row({std::to_string(i), format_double(pt.phi_over_2pi), format_double(pt.alpha),
                         format_double(pt.g), pt.resonant ? "4pi" : format_double(pt.hbar),
                         format_double(r.series.p_mean.back()), format_double(r.series.p2_mean.back()),
                         format_double(r.series.otoc_var.back()), format_double(avg), file});
    }
    manifest.outputs.push_back(emit_table(summary, config.output_dir, "sweep.csv"));
    manifest.finished_utc = stamp(std::chrono::system_clock::now());
    manifest.complete = first_error.empty();
    manifest.error = first_error;
    write_manifest(manifest, config.output_dir);
    if (!first_error.empty()) throw NumericalError(first_error);
    return manifest;
}

}  // namespace ratchet
