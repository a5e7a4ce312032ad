#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ratchet/grid.hpp"

namespace ratchet {

using cplx = std::complex<double>;

enum class Representation { angle, momentum };

/// A rotor wavefunction sampled on an AngularGrid.
///
/// In the angle representation amplitudes carry the measure,
/// sum_j |psi(theta_j)|^2 dtheta = 1. In the momentum representation they are
/// the coefficients of e^{i n theta} / sqrt(2 pi), so sum_n |psi_n|^2 = 1.
class WaveState {
public:
    WaveState(AngularGrid grid, std::vector<cplx> amplitudes, Representation rep);

    [[nodiscard]] const AngularGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] Representation representation() const noexcept { return rep_; }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }

    /// Total probability in the current representation.
    [[nodiscard]] double norm() const noexcept;

    /// Probability carried by the outer tenth of the momentum band. Works in
    /// either representation (transforms a copy when needed).
    [[nodiscard]] double edge_probability() const;

    /// In-place change of representation; no-op if already there.
    void transform_to(Representation target);

    void normalize();

private:
    AngularGrid grid_;
    std::vector<cplx> amps_;
    Representation rep_;
};

/// psi(theta) = cos(theta) / sqrt(pi), angle representation.
WaveState init_even_state(const AngularGrid& grid);

/// Single momentum eigenstate psi_n = delta_{n,index}, momentum representation.
WaveState plane_wave(const AngularGrid& grid, long index);

/// Unitary change of representation. Throws ConfigError when the input is
/// already in the requested representation.
WaveState to_momentum(const WaveState& state);
WaveState to_angle(const WaveState& state);

/// Momentum-space probabilities |psi_n|^2 in transform-slot order.
std::vector<double> momentum_probabilities(const WaveState& state);

/// <a|b> computed in whichever representation b is in (a is converted).
cplx inner_product(const WaveState& a, const WaveState& b);

/// |<a|b>|^2 for normalized states.
double fidelity(const WaveState& a, const WaveState& b);

}  // namespace ratchet
