#pragma once

#include <cstdint>
#include <vector>

#include "ratchet/observables.hpp"
#include "ratchet/params.hpp"
#include "ratchet/propagator.hpp"
#include "ratchet/wave_state.hpp"

namespace ratchet {

/// Which external kick enters V(theta) = g |psi|^2 + V_K(theta).
enum class KickVariant {
    ratchet,              // K [sin(theta) + alpha sin(2 theta + phi)]
    complex_exponential,  // K [cos(theta) + i sin(theta)]
};

/// Real Fourier series of the nonlinear kick potential,
/// Re V(theta) = v0 / sqrt(2 pi) + sum_{n>=1} [k_real[n-1] cos(n theta) - k_imag[n-1] sin(n theta)].
struct FourierKickCoefficients {
    int n_max = 0;
    std::vector<double> k_real;
    std::vector<double> k_imag;
    double v0 = 0.0;  // recorded; drops out of the force
    // Share of the force norm sum n^2 (K_r^2 + K_i^2) carried by harmonics past n_max.
    double tail_fraction = 0.0;
};

/// Fourier decomposition of V on the state's grid. With
/// V(theta) = sum_n V_n e^{i n theta} / sqrt(2 pi),
/// K_n^r = (V_n^r + V_{-n}^r) / sqrt(2 pi) and K_n^i = (V_n^i - V_{-n}^i) / sqrt(2 pi).
/// Throws ConfigError when n_max is not in [1, N/2].
FourierKickCoefficients fourier_kick_coefficients(const WaveState& state, const SystemParams& params,
                                                  int n_max = 64,
                                                  KickVariant variant = KickVariant::ratchet);

/// Evaluates the truncated series at theta (V_0 term included).
double reconstruct_potential(const FourierKickCoefficients& coeffs, double theta);

/// Ensemble of generalized-kicked-rotor trajectories.
struct ClassicalEnsemble {
    std::vector<double> theta;  // wrapped to [0, 2 pi)
    std::vector<double> p;      // unbounded
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t size() const noexcept { return theta.size(); }
};

/// theta uniform on [0, 2 pi), p = 0; deterministic in `seed`.
ClassicalEnsemble init_ensemble(std::size_t n_traj, std::uint64_t seed);

/// p <- p + sum_n [n K_n^r sin(n theta) + n K_n^i cos(n theta)], then
/// theta <- theta + p (mod 2 pi).
void classical_step(ClassicalEnsemble& ensemble, const FourierKickCoefficients& coeffs);

/// Mean of p^2 over trajectories.
double ensemble_energy(const ClassicalEnsemble& ensemble);

struct PhasePoint {
    double theta;
    double p;
};
std::vector<PhasePoint> phase_portrait(const ClassicalEnsemble& ensemble);

/// Fraction of a cells x cells grid over theta x (p mod 2 pi) holding at
/// least one point. The map is 2 pi-periodic in p, so the torus is its
/// natural phase space.
double portrait_occupancy(const std::vector<PhasePoint>& points, int cells = 50);

struct HybridRun {
    TimeSeries quantum;
    std::vector<double> classical_energy;  // <p^2>_cl per kick, index = t
    EvolutionReport report;
    double max_tail_fraction = 0.0;
    ClassicalEnsemble ensemble;
    WaveState final_state;
};

/// Co-evolves the quantum state and the ensemble. Before each kick the
/// coefficients are rebuilt from the current quantum state and applied to
/// the whole ensemble, then both systems advance one period.
/// `on_kick` (optional) sees the ensemble after each classical step.
HybridRun hybrid_evolve(const WaveState& quantum_state, const SystemParams& params, int kicks,
                        int n_max, ClassicalEnsemble ensemble,
                        const std::function<void(int, const ClassicalEnsemble&)>& on_kick = {},
                        KickVariant variant = KickVariant::ratchet);

}  // namespace ratchet
