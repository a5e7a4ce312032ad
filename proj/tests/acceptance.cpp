// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails. Usage: acceptance [criterion...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ratchet/analytic.hpp"
#include "ratchet/classical.hpp"
#include "ratchet/config.hpp"
#include "ratchet/fitting.hpp"
#include "ratchet/observables.hpp"
#include "ratchet/propagator.hpp"
#include "ratchet/quasienergy.hpp"
#include "ratchet/scenario.hpp"

using namespace ratchet;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SystemParams resonant(double k, double alpha, double phi, double g) {
    SystemParams p;
    p.kick_strength = k;
    p.ratchet_amplitude = alpha;
    p.ratchet_phase = phi;
    p.interaction = g;
    return p.at_resonance();
}

SystemParams nonresonant(double phi, double g, double hbar = 1.0) {
    SystemParams p;
    p.ratchet_phase = phi;
    p.interaction = g;
    p.hbar = hbar;
    return p;
}

RecordedRun run(const SystemParams& p, std::size_t n, int kicks) {
    return record_evolution(init_even_state(make_grid(n, p.hbar)), p, kicks);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }

// 1
Outcome resonant_exactness() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = resonant(1, 2, pi / 4, 10);
    const auto grid = make_grid(4096, p.hbar);
    auto s = init_even_state(grid);
    evolve(s, p, 100);
    const double f = fidelity(s, analytic_resonance_state(p, 100, grid));
    const double dt = seconds_since(t0);
    return {f >= 1 - 1e-10 && dt < 5.0, fmt("1 - fidelity = %.2e (<= 1e-10), runtime %.2f s (< 5 s)", 1 - f, dt)};
}

// 2
Outcome current_law() {
    std::mt19937_64 rng(2024);
    double worst = 0.0, worst_oracle = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto p = oracle::random_params(rng, true);
        const double sim = run(p, 4096, 100).series.p_mean.back();
        const double law = -p.ratchet_amplitude * std::cos(p.ratchet_phase) * p.kick_strength * 100;
        worst = std::max(worst, rel(sim, law));
        worst_oracle = std::max(worst_oracle, rel(analytic::moment_oracle(p, 100).p_mean, law));
    }
    double zero = 0.0;
    for (double g : {0.0, 5.0, 10.0}) {
        for (double v : run(resonant(1, 2, pi / 2, g), 4096, 100).series.p_mean) zero = std::max(zero, std::abs(v));
    }
    return {worst <= 1e-6 && worst_oracle <= 1e-6 && zero <= 1e-8,
            fmt("max rel error sim %.2e, quadrature %.2e (<= 1e-6); max |<p>| at phi = pi/2: %.2e (<= 1e-8)", worst,
                worst_oracle, zero)};
}

// 3
Outcome energy_law() {
    std::mt19937_64 rng(7);
    std::vector<SystemParams> cases{resonant(1, 2, pi / 4, 10)};
    for (int i = 0; i < 5; ++i) cases.push_back(oracle::random_params(rng, true));
    double worst = 0.0;
    for (const auto& p : cases) {
        const auto r = run(p, 4096, 100);
        for (int t : {10, 50, 100}) worst = std::max(worst, rel(r.series.p2_mean[t], analytic::predict_energy(p, t)));
    }
    const auto r = run(cases[0], 4096, 100);
    const double G = fit_quadratic_rate(r.series.time, r.series.p2_mean, 20, 100).value;
    const bool coeff_ok = std::abs(G - 22.82) < 0.005;
    return {worst <= 1e-6 && coeff_ok,
            fmt("max rel error %.2e at t in {10,50,100} (<= 1e-6); fitted t^2 coefficient %.4f (22.82)", worst, G)};
}

// 4
Outcome otoc_law() {
    double worst_r = 0.0;
    for (double phi : {0.0, pi / 4, pi / 2, pi, 1.5 * pi}) {
        const auto p = resonant(1, 2, phi, 10);
        const auto r = run(p, 4096, 100);
        const double R = fit_quadratic_rate(r.series.time, r.series.otoc_var, 20, 100).value;
        worst_r = std::max(worst_r, std::abs(R / analytic::growth_rate_R(p) - 1));
    }
    double gmin = 1e300, gmax = 0.0;
    for (double phi : {0.0, pi / 4, pi / 2, pi, 1.5 * pi}) {
        const auto r = run(resonant(1, 2, phi, 0), 4096, 100);
        const double G = fit_quadratic_rate(r.series.time, r.series.p2_mean, 20, 100).value;
        gmin = std::min(gmin, G);
        gmax = std::max(gmax, G);
    }
    const double spread = gmax / gmin - 1;
    return {worst_r <= 0.005 && spread <= 0.001,
            fmt("max |R_fit / R - 1| = %.2e (<= 0.5%%); G spread over phi at g = 0: %.2e (<= 0.1%%)", worst_r, spread)};
}

// 5
struct GammaPoint {
    std::optional<double> fit;
    double theory;
};

GammaPoint gamma_at(double g, double hbar, std::size_t n, const TimeSeries& baseline) {
    const auto r = run(nonresonant(pi / 4, g, hbar), n, 300);
    const auto growth = fit_growth_beyond_critical(r.series.time, r.series.p2_mean, baseline.p2_mean,
                                                   make_grid(n, hbar));
    GammaPoint out{std::nullopt, analytic::gamma_theory(g, hbar)};
    if (growth.rate) out.fit = growth.rate->value;
    return out;
}

Outcome nonresonant_gamma() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto base = run(nonresonant(pi / 4, 0), 2048, 300).series;
    bool ok = true;
    std::string detail;
    for (double g : {1.0, 2.0}) {
        const auto pt = gamma_at(g, 1.0, 2048, base);
        const double err = pt.fit ? std::abs(*pt.fit / pt.theory - 1) : 1e9;
        ok = ok && err <= 0.25;
        detail += fmt("g=%g: gamma %.4f vs %.4f (%.1f%%); ", g, pt.fit.value_or(NAN), pt.theory, 100 * err);
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 60.0;

    // Qualitative shape: monotone in g at hbar = 1, steeper at smaller hbar.
    std::vector<double> fits;
    bool monotone = true;
    for (double g : {0.3, 0.5, 1.0, 2.0}) {
        const auto pt = gamma_at(g, 1.0, 2048, base);
        if (!pt.fit) {
            monotone = false;
            continue;
        }
        if (!fits.empty() && *pt.fit <= fits.back()) monotone = false;
        fits.push_back(*pt.fit);
    }
    const std::size_t n07 = scaled_grid_size(2048, 0.7);
    const auto base07 = run(nonresonant(pi / 4, 0, 0.7), n07, 300).series;
    const auto small_hbar = gamma_at(1.0, 0.7, n07, base07);
    const auto unit_hbar = gamma_at(1.0, 1.0, 2048, base);
    const bool steeper = small_hbar.fit && unit_hbar.fit && *small_hbar.fit > *unit_hbar.fit;
    ok = ok && monotone && steeper;
    detail += fmt("runtime %.1f s (< 60 s); monotone in g: %s; gamma(hbar=0.7) %.3f > gamma(hbar=1) %.3f: %s", dt,
                  monotone ? "yes" : "no", small_hbar.fit.value_or(NAN), unit_hbar.fit.value_or(NAN),
                  steeper ? "yes" : "no");
    return {ok, detail};
}

// 6 and 7 share the localized runs.
const RecordedRun& localized_run(double phi_over_2pi) {
    static std::map<double, RecordedRun> cache;
    auto it = cache.find(phi_over_2pi);
    if (it == cache.end()) it = cache.emplace(phi_over_2pi, run(nonresonant(kTwoPi * phi_over_2pi, 0), 2048, 4095)).first;
    return it->second;
}

std::vector<MomentumBin> distribution_at(double phi_over_2pi, int t) {
    auto s = init_even_state(make_grid(2048, 1.0));
    evolve(s, nonresonant(kTwoPi * phi_over_2pi, 0), t);
    return momentum_distribution(s);
}

Outcome localization() {
    const auto& r = localized_run(0.05);
    const auto growth = fit_exponential_rate(r.series.time, r.series.p2_mean, 100, 1000);
    double pmax = 0.0;
    for (int t = 0; t <= 1000; ++t) pmax = std::max(pmax, r.series.p2_mean[t]);
    const auto xi05 = fit_localization_length(distribution_at(0.05, 500), 1.0);
    const auto xi20 = fit_localization_length(distribution_at(0.2, 500), 1.0);
    const bool ok = std::abs(growth.value) <= 0.01 && xi05.r_squared >= 0.9 && std::abs(xi05.value / 6.6 - 1) <= 0.3 &&
                    xi20.r_squared >= 0.9 && std::abs(xi20.value / 5.6 - 1) <= 0.3;
    return {ok, fmt("gamma(g=0) = %.2e (|.| <= 0.01), max <p^2> = %.0f; xi(0.05) = %.2f (R^2 %.3f, 6.6 +-30%%); "
                    "xi(0.2) = %.2f (R^2 %.3f, 5.6 +-30%%)",
                    growth.value, pmax, xi05.value, xi05.r_squared, xi20.value, xi20.r_squared)};
}

Outcome phase_control() {
    const auto& a = localized_run(0.05);
    const auto& b = localized_run(0.25);
    const double lo = time_averaged_energy(a.series.time, a.series.p2_mean, 500, 1000);
    const double hi = time_averaged_energy(b.series.time, b.series.p2_mean, 500, 1000);
    return {hi / lo >= 2, fmt("time-averaged <p^2>: %.1f (0.25) vs %.1f (0.05), ratio %.2f (>= 2)", hi, lo, hi / lo)};
}

// 8
Outcome quasienergy_peaks() {
    const auto s05 = quasienergy_spectrum(localized_run(0.05).series.autocorr, 4096);
    const auto s20 = quasienergy_spectrum(localized_run(0.2).series.autocorr, 4096);
    const auto n05 = find_peaks(s05).size(), n20 = find_peaks(s20).size();
    const auto m05 = merged_peaks(s05), m20 = merged_peaks(s20);
    std::printf("INFO [8] heaviest merged peaks: phi/2pi=0.05 -> %.3f, %.3f, %.3f; phi/2pi=0.2 -> %.3f, %.3f, %.3f\n",
                m05[0].weight, m05[1].weight, m05[2].weight, m20[0].weight, m20[1].weight, m20[2].weight);
    return {n05 == 2 && n20 == 1,
            fmt("peaks above 5x median: %zu for phi/2pi=0.05 (want 2), %zu for phi/2pi=0.2 (want 1)", n05, n20)};
}

// 9
Outcome correspondence() {
    SystemParams p = nonresonant(pi / 4, 3.0);
    const auto grid = make_grid(2048, 1.0);
    const auto base = run(nonresonant(pi / 4, 0), 2048, 40).series;
    std::vector<PhasePoint> portrait;
    const auto h = hybrid_evolve(init_even_state(grid), p, 40, 1023, init_ensemble(10000, 1),
                                 [&](int t, const ClassicalEnsemble& e) {
                                     if (t == 10) portrait = phase_portrait(e);
                                 });
    const auto growth = fit_growth_beyond_critical(h.quantum.time, h.quantum.p2_mean, base.p2_mean, grid);
    if (!growth.rate) return {false, "no exponential window found"};
    const double gq = growth.rate->value;
    const double gc =
        fit_exponential_rate(h.quantum.time, h.classical_energy, growth.rate->window_lo, growth.rate->window_hi).value;
    const double occ = portrait_occupancy(portrait);
    return {std::abs(gc / gq - 1) <= 0.3 && occ >= 0.9,
            fmt("gamma classical %.3f vs quantum %.3f (ratio %.3f, within 30%%); t=10 occupancy %.3f (>= 0.9)", gc, gq,
                gc / gq, occ)};
}

// 10
std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome property_suite() {
    std::mt19937_64 rng(10);
    double drift = 0.0;
    for (bool res : {false, true}) {
        for (int i = 0; i < 3; ++i) {
            auto p = oracle::random_params(rng, res);
            p.interaction *= 0.2;
            auto s = init_even_state(make_grid(res ? 16384 : 2048, p.hbar));
            drift = std::max(drift, evolve(s, p, 1000).final_norm_drift);
        }
    }
    double roundtrip = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto s = oracle::random_state(make_grid(1024, 1.0), rng, 50);
        const auto b = to_angle(to_momentum(s));
        for (std::size_t j = 0; j < s.size(); ++j) roundtrip = std::max(roundtrip, std::abs(b.amplitudes()[j] - s.amplitudes()[j]));
    }
    double recon = 0.0;
    for (int i = 0; i < 5; ++i) {
        const auto s = oracle::random_state(make_grid(512, 1.0), rng, 20);
        const auto p = oracle::random_params(rng, false);
        const auto c = fourier_kick_coefficients(s, p, 128);
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double th = s.grid().theta(j);
            const double v = kick_potential(p, th) + p.interaction * std::norm(s.amplitudes()[j]);
            recon = std::max(recon, std::abs(reconstruct_potential(c, th) - v));
        }
    }
    std::vector<int> t(120);
    std::vector<double> q(120), e(120);
    for (int i = 0; i < 120; ++i) {
        t[i] = i;
        q[i] = 3.7 * i * i + 5.0;
        e[i] = 0.4 * std::exp(0.21 * i);
    }
    const double fit_err = std::max(std::abs(fit_quadratic_rate(t, q, 20, 100).value - 3.7),
                                    std::abs(fit_exponential_rate(t, e, 10, 80).value - 0.21));
    const auto dir = std::filesystem::temp_directory_path() / "ratchet_acceptance_sweep";
    auto cfg = build_config({}, {{"grid_n", "512"}, {"kicks", "50"}, {"phi_scan", "0.05,0.2"}, {"g_scan", "0,1"}});
    std::vector<std::string> sums[2];
    for (int rep = 0; rep < 2; ++rep) {
        std::filesystem::remove_all(dir);
        cfg.output_dir = dir;
        cfg.workers = rep == 0 ? 1 : 3;
        const auto m = run_sweep(cfg);
        for (const auto& o : m.outputs) sums[rep].push_back(read_file(dir / o.file));
    }
    std::filesystem::remove_all(dir);
    const bool same = sums[0] == sums[1];
    return {drift < 1e-10 && roundtrip < 1e-12 && recon < 1e-8 && fit_err < 1e-6 && same,
            fmt("norm drift %.1e (< 1e-10), round trip %.1e (< 1e-12), reconstruction %.1e (< 1e-8), fit recovery "
                "%.1e (< 1e-6), sweep reruns byte-identical: %s",
                drift, roundtrip, recon, fit_err, same ? "yes" : "no")};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "resonant exactness", resonant_exactness},
        {2, "directed current law", current_law},
        {3, "energy law", energy_law},
        {4, "otoc law and phase modulation", otoc_law},
        {5, "nonresonant exponential rate", nonresonant_gamma},
        {6, "dynamical localization", localization},
        {7, "phase-controlled localization", phase_control},
        {8, "quasienergy peak count", quasienergy_peaks},
        {9, "quantum-classical correspondence", correspondence},
        {10, "property suite", property_suite},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& c : all) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        Outcome o{false, ""};
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
