#include "ratchet/classical.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ratchet/spectral_transform.hpp"

namespace ratchet {

namespace {

const double kSqrtTwoPi = std::sqrt(kTwoPi);

double wrap_angle(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w >= kTwoPi ? 0.0 : w;
}

}  // namespace

FourierKickCoefficients fourier_kick_coefficients(const WaveState& state, const SystemParams& params,
                                                  int n_max, KickVariant variant) {
    const auto& grid = state.grid();
    const auto n_points = static_cast<long>(grid.size());
    if (n_max < 1 || n_max > n_points / 2) {
        throw ConfigError("n_max must lie in [1, N/2], got " + std::to_string(n_max));
    }

    WaveState angle = state;
    angle.transform_to(Representation::angle);
    const auto amps = angle.amplitudes();

    std::vector<cplx> v(amps.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double th = grid.theta(j);
        const double density = params.interaction * std::norm(amps[j]);
        if (variant == KickVariant::ratchet) {
            v[j] = density + kick_potential(params, th);
        } else {
            v[j] = density + params.kick_strength * cplx(std::cos(th), std::sin(th));
        }
    }
    SpectralTransform(v.size()).forward(v);
    const double to_coeff = kSqrtTwoPi / static_cast<double>(n_points);
    for (auto& c : v) c *= to_coeff;  // now V_n in slot order

    FourierKickCoefficients out;
    out.n_max = n_max;
    out.v0 = v[0].real();
    out.k_real.resize(static_cast<std::size_t>(n_max));
    out.k_imag.resize(static_cast<std::size_t>(n_max));

    const long half = n_points / 2;
    double total_force = 0.0;
    double tail_force = 0.0;
    for (long n = 1; n <= half; ++n) {
        double kr = 0.0;
        double ki = 0.0;
        if (n < half) {
            const cplx plus = v[grid.slot_of(n)];
            const cplx minus = v[grid.slot_of(-n)];
            kr = (plus.real() + minus.real()) / kSqrtTwoPi;
            ki = (plus.imag() - minus.imag()) / kSqrtTwoPi;
        } else {
            // Nyquist harmonic: one shared slot, and sin(N theta_j / 2) = 0 on the grid.
            kr = v[grid.slot_of(-half)].real() / kSqrtTwoPi;
        }
        const double force = static_cast<double>(n * n) * (kr * kr + ki * ki);
        total_force += force;
        if (n <= n_max) {
            out.k_real[static_cast<std::size_t>(n - 1)] = kr;
            out.k_imag[static_cast<std::size_t>(n - 1)] = ki;
        } else {
            tail_force += force;
        }
    }
    out.tail_fraction = total_force > 0.0 ? std::sqrt(tail_force / total_force) : 0.0;
    return out;
}

double reconstruct_potential(const FourierKickCoefficients& coeffs, double theta) {
    double v = coeffs.v0 / kSqrtTwoPi;
    for (int n = 1; n <= coeffs.n_max; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        v += coeffs.k_real[i] * std::cos(n * theta) - coeffs.k_imag[i] * std::sin(n * theta);
    }
    return v;
}

ClassicalEnsemble init_ensemble(std::size_t n_traj, std::uint64_t seed) {
    if (n_traj == 0) throw ConfigError("ensemble needs at least one trajectory");
    ClassicalEnsemble e;
    e.seed = seed;
    e.theta.resize(n_traj);
    e.p.assign(n_traj, 0.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (auto& th : e.theta) th = wrap_angle(angle(rng));
    return e;
}

void classical_step(ClassicalEnsemble& ensemble, const FourierKickCoefficients& coeffs) {
    const auto n_max = static_cast<std::size_t>(coeffs.n_max);
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const cplx z = std::polar(1.0, ensemble.theta[i]);
        cplx w = 1.0;  // e^{i n theta} by recurrence
        double force = 0.0;
        for (std::size_t k = 0; k < n_max; ++k) {
            w *= z;
            const double n = static_cast<double>(k + 1);
            force += n * (coeffs.k_real[k] * w.imag() + coeffs.k_imag[k] * w.real());
        }
        ensemble.p[i] += force;
        ensemble.theta[i] = wrap_angle(ensemble.theta[i] + ensemble.p[i]);
    }
}

double ensemble_energy(const ClassicalEnsemble& ensemble) {
    if (ensemble.size() == 0) return 0.0;
    double sum = 0.0;
    for (double p : ensemble.p) sum += p * p;
    return sum / static_cast<double>(ensemble.size());
}

std::vector<PhasePoint> phase_portrait(const ClassicalEnsemble& ensemble) {
    std::vector<PhasePoint> out(ensemble.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {ensemble.theta[i], ensemble.p[i]};
    return out;
}

double portrait_occupancy(const std::vector<PhasePoint>& points, int cells) {
    if (cells < 1) throw ConfigError("cell count must be positive");
    const auto c = static_cast<std::size_t>(cells);
    std::vector<char> hit(c * c, 0);
    const auto cell_of = [&](double x) {
        const auto k = static_cast<std::size_t>(wrap_angle(x) / kTwoPi * static_cast<double>(cells));
        return std::min(k, c - 1);
    };
    for (const auto& pt : points) hit[cell_of(pt.theta) * c + cell_of(pt.p)] = 1;
    std::size_t filled = 0;
    for (char h : hit) filled += static_cast<std::size_t>(h);
    return static_cast<double>(filled) / static_cast<double>(c * c);
}

HybridRun hybrid_evolve(const WaveState& quantum_state, const SystemParams& params, int kicks,
                        int n_max, ClassicalEnsemble ensemble,
                        const std::function<void(int, const ClassicalEnsemble&)>& on_kick,
                        KickVariant variant) {
    WaveState state = quantum_state;
    SeriesRecorder recorder(params);
    std::vector<double> classical{ensemble_energy(ensemble)};
    classical.reserve(static_cast<std::size_t>(kicks) + 1);
    double max_tail = 0.0;

    // The observer at t sees the state that the (t+1)-th kick acts on, so the
    // classical map for that period is driven by the same density.
    auto observer = [&](int t, const WaveState& s) {
        recorder(t, s);
        if (t >= kicks) return;
        const auto coeffs = fourier_kick_coefficients(s, params, n_max, variant);
        max_tail = std::max(max_tail, coeffs.tail_fraction);
        classical_step(ensemble, coeffs);
        classical.push_back(ensemble_energy(ensemble));
        if (on_kick) on_kick(t + 1, ensemble);
    };
    EvolutionReport report = evolve(state, params, kicks, observer);
    return {recorder.take(), std::move(classical), report, max_tail, std::move(ensemble),
            std::move(state)};
}

}  // namespace ratchet
