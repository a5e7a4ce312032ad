#include "ratchet/propagator.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

namespace ratchet {

namespace {

constexpr double kKickNormTolerance = 1e-8;

double momentum_edge_probability(const WaveState& momentum_state) {
    const auto& grid = momentum_state.grid();
    const long edge = grid.edge_threshold();
    const auto amps = momentum_state.amplitudes();
    double tail = 0.0;
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if (std::abs(grid.index_at(k)) >= edge) tail += std::norm(amps[k]);
    }
    return tail;
}

}  // namespace

double kick_potential(const SystemParams& params, double theta) {
    return params.kick_strength *
           (std::sin(theta) + params.ratchet_amplitude * std::sin(2.0 * theta + params.ratchet_phase));
}

FloquetPropagator::FloquetPropagator(const AngularGrid& grid, const SystemParams& params)
    : grid_(grid), params_(params) {
    params_.validate();
    if (grid_.hbar() != params_.hbar) throw ConfigError("grid hbar does not match parameters");

    potential_over_hbar_.resize(grid_.size());
    for (std::size_t j = 0; j < grid_.size(); ++j) {
        potential_over_hbar_[j] = kick_potential(params_, grid_.theta(j)) / params_.hbar;
    }
    if (!params_.resonant) {
        free_phase_.resize(grid_.size());
        for (std::size_t k = 0; k < grid_.size(); ++k) {
            const double n = static_cast<double>(grid_.index_at(k));
            free_phase_[k] = std::polar(1.0, -0.5 * n * n * params_.hbar);
        }
    }
}

void FloquetPropagator::kick(WaveState& state) const {
    state.transform_to(Representation::angle);
    const double g_over_hbar = params_.interaction / params_.hbar;
    auto amps = state.amplitudes();
    for (std::size_t j = 0; j < amps.size(); ++j) {
        const double phase = potential_over_hbar_[j] + g_over_hbar * std::norm(amps[j]);
        amps[j] *= std::polar(1.0, -phase);
    }
}

void FloquetPropagator::drift(WaveState& state) const {
    state.transform_to(Representation::momentum);
    if (free_phase_.empty()) return;
    auto amps = state.amplitudes();
    for (std::size_t k = 0; k < amps.size(); ++k) amps[k] *= free_phase_[k];
}

void FloquetPropagator::step(WaveState& state) const {
    kick(state);
    drift(state);
    state.transform_to(Representation::angle);
}

WaveState kick_operator(const WaveState& state, const SystemParams& params) {
    if (state.representation() != Representation::angle) {
        throw ConfigError("kick_operator expects an angle-representation state");
    }
    if (std::abs(state.norm() - 1.0) > kKickNormTolerance) {
        throw NumericalError("kick_operator requires a normalized state");
    }
    WaveState out = state;
    FloquetPropagator(state.grid(), params).kick(out);
    return out;
}

WaveState free_operator(const WaveState& state, const SystemParams& params) {
    WaveState out = state;
    FloquetPropagator(state.grid(), params).drift(out);
    out.transform_to(state.representation());
    return out;
}

WaveState floquet_step(const WaveState& state, const SystemParams& params) {
    WaveState angle_state = state;
    angle_state.transform_to(Representation::angle);
    WaveState out = kick_operator(angle_state, params);
    FloquetPropagator(state.grid(), params).drift(out);
    out.transform_to(Representation::angle);
    return out;
}

EvolutionReport evolve(WaveState& state, const SystemParams& params, int kicks,
                       const KickObserver& observer, const EvolveOptions& options) {
    if (kicks < 0) throw ConfigError("kick count must be non-negative");
    const auto start = std::chrono::steady_clock::now();
    const FloquetPropagator prop(state.grid(), params);

    state.transform_to(Representation::angle);
    const double initial_norm = state.norm();

    EvolutionReport report;
    report.max_edge_probability = state.edge_probability();
    report.aliasing_flag = report.max_edge_probability > options.aliasing_warning;
    if (observer) observer(0, state);

    for (int t = 1; t <= kicks; ++t) {
        prop.kick(state);
        prop.drift(state);

        const double drift = std::abs(state.norm() - initial_norm);
        const double edge = momentum_edge_probability(state);
        report.final_norm_drift = drift;
        report.max_edge_probability = std::max(report.max_edge_probability, edge);
        if (edge > options.aliasing_warning) report.aliasing_flag = true;

        if (drift > options.norm_drift_limit) {
            throw NumericalError("norm drift " + std::to_string(drift) + " at kick " +
                                 std::to_string(t));
        }
        if (options.aliasing_abort && edge > *options.aliasing_abort) {
            throw NumericalError("momentum band edge holds " + std::to_string(edge) +
                                 " probability at kick " + std::to_string(t) +
                                 "; enlarge the grid");
        }

        state.transform_to(Representation::angle);
        report.kicks_applied = t;
        if (observer) observer(t, state);
    }

    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

WaveState analytic_resonance_state(const SystemParams& params, int t, const AngularGrid& grid) {
    params.validate();
    if (!params.resonant) {
        throw ConfigError("analytic_resonance_state requires the hbar = 4 pi resonance");
    }
    if (t < 0) throw ConfigError("time must be non-negative");
    std::vector<cplx> amps(grid.size());
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    const double rate = static_cast<double>(t) / kResonantHbar;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double th = grid.theta(j);
        const double c = std::cos(th);
        const double phase =
            rate * (kick_potential(params, th) + params.interaction * c * c / std::numbers::pi);
        amps[j] = c * inv_sqrt_pi * std::polar(1.0, -phase);
    }
    return WaveState(grid, std::move(amps), Representation::angle);
}

}  // namespace ratchet
