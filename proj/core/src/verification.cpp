#include "ratchet/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "ratchet/analytic.hpp"
#include "ratchet/observables.hpp"

namespace ratchet {

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

VerifyCase check(const SystemParams& params, int kicks, std::size_t grid_n, double tolerance) {
    VerifyCase c;
    c.params = params;
    c.kicks = kicks;
    c.p_closed = analytic::predict_current(params, kicks);
    c.p2_closed = analytic::predict_energy(params, kicks);
    const auto oracle = analytic::moment_oracle(params, kicks);
    c.p_oracle = oracle.p_mean;
    c.p2_oracle = oracle.p2_mean;
    const AngularGrid grid = make_grid(grid_n, params.hbar);
    const auto run = record_evolution(init_even_state(grid), params, kicks);
    c.p_sim = run.series.p_mean.back();
    c.p2_sim = run.series.p2_mean.back();
    c.max_rel_error = std::max({rel(c.p_closed, c.p_oracle), rel(c.p_closed, c.p_sim), rel(c.p_oracle, c.p_sim),
                                rel(c.p2_closed, c.p2_oracle), rel(c.p2_closed, c.p2_sim),
                                rel(c.p2_oracle, c.p2_sim)});
    c.passed = oracle.converged && c.max_rel_error <= tolerance;
    return c;
}

SystemParams resonant(double k, double alpha, double phi, double g) {
    SystemParams p;
    p.kick_strength = k;
    p.ratchet_amplitude = alpha;
    p.ratchet_phase = phi;
    p.interaction = g;
    p.hbar = kResonantHbar;
    p.resonant = true;
    return p;
}

}  // namespace

bool VerifyReport::passed() const {
    return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const VerifyCase& c) { return c.passed; });
}

VerifyReport verify_resonance(std::size_t grid_n, int random_cases, std::uint64_t seed, double tolerance) {
    VerifyReport report;
    report.tolerance = tolerance;
    for (double phi : {0.0, kTwoPi / 8, kTwoPi / 6, kTwoPi / 4}) {
        for (double alpha : {-2.0, 2.0}) report.cases.push_back(check(resonant(1.0, alpha, phi, 10.0), 100, grid_n, tolerance));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> k(0.5, 2.0), a(-2.0, 2.0), ph(0.0, kTwoPi), g(0.0, 10.0);
    std::uniform_int_distribution<int> t(1, 100);
    for (int i = 0; i < random_cases; ++i) {
        const double kk = k(rng), aa = a(rng), pp = ph(rng), gg = g(rng);
        report.cases.push_back(check(resonant(kk, aa, pp, gg), t(rng), grid_n, tolerance));
    }
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::string out = "K,alpha,phi,g,t,p_closed,p_oracle,p_sim,p2_closed,p2_oracle,p2_sim,max_rel_error,status\n";
    char buf[512];
    for (const auto& c : report.cases) {
        std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6g,%.6g,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.3e,%s\n",
                      c.params.kick_strength, c.params.ratchet_amplitude, c.params.ratchet_phase,
                      c.params.interaction, c.kicks, c.p_closed, c.p_oracle, c.p_sim, c.p2_closed, c.p2_oracle,
                      c.p2_sim, c.max_rel_error, c.passed ? "ok" : "FAIL");
        out += buf;
    }
    out += report.passed() ? "verify: all cases agree\n" : "verify: disagreement beyond tolerance\n";
    return out;
}

}  // namespace ratchet
