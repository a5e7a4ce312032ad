#include "ratchet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ratchet::analytic {

namespace {

constexpr double pi = std::numbers::pi;

double shared_terms(const SystemParams& p) {
    const double K = p.kick_strength;
    const double a = p.ratchet_amplitude;
    const double g = p.interaction;
    return (2.0 / pi) * a * K * g * std::sin(p.ratchet_phase) + g * g / (2.0 * pi * pi);
}

struct Quadrature {
    double p = 0.0;
    double p2 = 0.0;
};

Quadrature integrate_moments(const SystemParams& params, double t, std::size_t n) {
    const double hbar = kResonantHbar;
    const double K = params.kick_strength;
    const double a = params.ratchet_amplitude;
    const double phi = params.ratchet_phase;
    const double g = params.interaction;
    const double rate = t / (4.0 * pi);
    const double h = kTwoPi / static_cast<double>(n);

    // psi = A e^{-iS}, A = cos/sqrt(pi);
    // psi* p psi = -i hbar A A' - hbar A^2 S', |p psi|^2 = hbar^2 (A'^2 + A^2 S'^2).
    Quadrature q;
    for (std::size_t j = 0; j < n; ++j) {
        const double th = h * static_cast<double>(j);
        const double amp2 = std::cos(th) * std::cos(th) / pi;
        const double damp2 = std::sin(th) * std::sin(th) / pi;
        const double dphase =
            rate * (K * (std::cos(th) + 2.0 * a * std::cos(2.0 * th + phi)) - g * std::sin(2.0 * th) / pi);
        q.p += -hbar * amp2 * dphase;
        q.p2 += hbar * hbar * (damp2 + amp2 * dphase * dphase);
    }
    q.p *= h;
    q.p2 *= h;
    return q;
}

double relative_change(double fine, double coarse) {
    const double scale = std::max(std::abs(fine), 1.0);
    return std::abs(fine - coarse) / scale;
}

}  // namespace

double predict_current(const SystemParams& p, double t) {
    return -p.ratchet_amplitude * std::cos(p.ratchet_phase) * p.kick_strength * t;
}

double growth_rate_G(const SystemParams& p) {
    const double K = p.kick_strength;
    const double a = p.ratchet_amplitude;
    return (0.75 + 2.0 * a * a) * K * K + shared_terms(p);
}

double growth_rate_R(const SystemParams& p) {
    const double K = p.kick_strength;
    const double a = p.ratchet_amplitude;
    const double c = std::cos(p.ratchet_phase);
    const double scale = p.translation / (4.0 * pi);
    return scale * scale * ((0.75 + a * a * (2.0 - c * c)) * K * K + shared_terms(p));
}

double predict_energy(const SystemParams& p, double t) { return growth_rate_G(p) * t * t + 16.0 * pi * pi; }

double predict_otoc(const SystemParams& p, double t) { return growth_rate_R(p) * t * t; }

double gamma_theory(double interaction, double hbar) {
    if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
    const double x = interaction / (pi * hbar);
    return std::log1p(x * x);
}

ResonancePrediction predict(const SystemParams& params, double t) {
    return {predict_current(params, t), predict_energy(params, t), predict_otoc(params, t),
            growth_rate_G(params), growth_rate_R(params)};
}

MomentOracle moment_oracle(const SystemParams& params, double t, std::size_t n_quadrature) {
    if (!params.resonant) throw ConfigError("moment_oracle describes the hbar = 4 pi resonance only");
    if (n_quadrature < 64 || n_quadrature % 2 != 0) {
        throw ConfigError("quadrature needs an even node count of at least 64");
    }
    const Quadrature fine = integrate_moments(params, t, n_quadrature);
    const Quadrature coarse = integrate_moments(params, t, n_quadrature / 2);

    MomentOracle out;
    out.p_mean = fine.p;
    out.p2_mean = fine.p2;
    out.richardson_delta = std::max(relative_change(fine.p, coarse.p), relative_change(fine.p2, coarse.p2));
    out.converged = out.richardson_delta < 1e-12;
    return out;
}

}  // namespace ratchet::analytic
