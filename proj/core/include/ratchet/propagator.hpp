#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ratchet/params.hpp"
#include "ratchet/wave_state.hpp"

namespace ratchet {

struct EvolutionReport {
    int kicks_applied = 0;
    double final_norm_drift = 0.0;
    double max_edge_probability = 0.0;
    bool aliasing_flag = false;
    double wall_time = 0.0;  // seconds
};

struct EvolveOptions {
    double norm_drift_limit = 1e-6;
    double aliasing_warning = 1e-8;
    // Abort once the outer tenth of the momentum band holds this much
    // probability. Unset means record-only.
    std::optional<double> aliasing_abort;
};

/// Called at t = 0 and after every kick with read access to the state.
using KickObserver = std::function<void(int t, const WaveState& state)>;

/// Ratchet kick potential K [sin(theta) + alpha sin(2 theta + phi)].
double kick_potential(const SystemParams& params, double theta);

/// One-period Floquet map U = U_f U_K with the kick and free phases
/// precomputed for a fixed grid and parameter set.
///
/// The nonlinear phase uses the pre-kick density, which the kick leaves
/// unchanged, so each step is exact with no splitting error.
class FloquetPropagator {
public:
    FloquetPropagator(const AngularGrid& grid, const SystemParams& params);

    [[nodiscard]] const AngularGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] const SystemParams& params() const noexcept { return params_; }

    /// Kick in place; the state ends in angle representation.
    void kick(WaveState& state) const;
    /// Free evolution in place; the state ends in momentum representation.
    void drift(WaveState& state) const;
    /// kick then drift; the state ends in angle representation.
    void step(WaveState& state) const;

private:
    AngularGrid grid_;
    SystemParams params_;
    std::vector<double> potential_over_hbar_;
    std::vector<cplx> free_phase_;  // empty at resonance
};

/// psi(theta) <- exp{-i [V_K(theta) + g |psi(theta)|^2] / hbar} psi(theta).
/// Input must be in angle representation and normalized to 1e-8.
WaveState kick_operator(const WaveState& state, const SystemParams& params);

/// psi_n <- exp(-i n^2 hbar / 2) psi_n; output keeps the input representation.
WaveState free_operator(const WaveState& state, const SystemParams& params);

/// kick_operator followed by free_operator; output in angle representation.
WaveState floquet_step(const WaveState& state, const SystemParams& params);

/// Applies `kicks` Floquet steps to `state` in place.
///
/// Throws NumericalError when the norm drifts past options.norm_drift_limit
/// or the aliasing abort threshold is crossed. Deterministic given inputs.
EvolutionReport evolve(WaveState& state, const SystemParams& params, int kicks,
                       const KickObserver& observer = {}, const EvolveOptions& options = {});

/// Closed-form state at the principal resonance, starting from cos(theta)/sqrt(pi):
/// psi(theta, t) = exp{-(i t / 4 pi) [V_K(theta) + g cos^2(theta) / pi]} cos(theta)/sqrt(pi).
/// Requires params.resonant.
WaveState analytic_resonance_state(const SystemParams& params, int t, const AngularGrid& grid);

}  // namespace ratchet
