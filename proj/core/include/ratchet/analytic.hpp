#pragma once

#include <cstddef>

#include "ratchet/params.hpp"

namespace ratchet::analytic {

// Closed-form resonance laws for the even initial state cos(theta)/sqrt(pi)
// at hbar = 4 pi. None of this code touches the spectral propagator.

/// <p(t)> = -alpha cos(phi) K t
double predict_current(const SystemParams& params, double t);

/// <p^2(t)> = G t^2 + 16 pi^2
double predict_energy(const SystemParams& params, double t);

/// C(t) = R t^2, without the t-independent initial-variance offset.
double predict_otoc(const SystemParams& params, double t);

/// (3/4 + 2 alpha^2) K^2 + (2/pi) alpha K g sin(phi) + g^2 / (2 pi^2)
double growth_rate_G(const SystemParams& params);

/// (eps / 4 pi)^2 {[3/4 + alpha^2 (2 - cos^2 phi)] K^2 + (2/pi) alpha K g sin(phi) + g^2 / (2 pi^2)}
double growth_rate_R(const SystemParams& params);

/// Nonresonant exponential diffusion rate ln[1 + (g / (pi hbar))^2].
double gamma_theory(double interaction, double hbar);

struct ResonancePrediction {
    double p_mean;
    double p2_mean;
    double otoc;
    double growth_G;
    double growth_R;
};
ResonancePrediction predict(const SystemParams& params, double t);

struct MomentOracle {
    double p_mean = 0.0;
    double p2_mean = 0.0;
    // Largest relative change between n and n/2 quadrature nodes.
    double richardson_delta = 0.0;
    bool converged = false;
};

/// <p> and <p^2> of the closed-form resonance state at kick t, by
/// trapezoidal quadrature of psi* (-i hbar d/dtheta) psi with the phase
/// derivative taken analytically. Throws ConfigError for n_quadrature < 64
/// or odd and for nonresonant params; `converged` is false when the halved rule disagrees beyond 1e-12.
MomentOracle moment_oracle(const SystemParams& params, double t, std::size_t n_quadrature = 1u << 14);

}  // namespace ratchet::analytic
