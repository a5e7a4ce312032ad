#include "ratchet/wave_state.hpp"

#include <cmath>
#include <numbers>

#include "ratchet/params.hpp"
#include "ratchet/spectral_transform.hpp"

namespace ratchet {

namespace {

const double kSqrtTwoPi = std::sqrt(kTwoPi);

void angle_to_momentum(std::vector<cplx>& amps) {
    SpectralTransform(amps.size()).forward(amps);
    const double scale = kSqrtTwoPi / static_cast<double>(amps.size());
    for (auto& a : amps) a *= scale;
}

void momentum_to_angle(std::vector<cplx>& amps) {
    SpectralTransform(amps.size()).backward(amps);
    const double scale = 1.0 / kSqrtTwoPi;
    for (auto& a : amps) a *= scale;
}

}  // namespace

WaveState::WaveState(AngularGrid grid, std::vector<cplx> amplitudes, Representation rep)
    : grid_(grid), amps_(std::move(amplitudes)), rep_(rep) {
    if (amps_.size() != grid_.size()) {
        throw ConfigError("amplitude count does not match grid size");
    }
}

double WaveState::norm() const noexcept {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return rep_ == Representation::angle ? sum * grid_.spacing() : sum;
}

double WaveState::edge_probability() const {
    std::vector<cplx> coeffs = amps_;
    if (rep_ == Representation::angle) angle_to_momentum(coeffs);
    const long edge = grid_.edge_threshold();
    double tail = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (std::abs(grid_.index_at(k)) >= edge) tail += std::norm(coeffs[k]);
    }
    return tail;
}

void WaveState::transform_to(Representation target) {
    if (target == rep_) return;
    if (target == Representation::momentum) {
        angle_to_momentum(amps_);
    } else {
        momentum_to_angle(amps_);
    }
    rep_ = target;
}

void WaveState::normalize() {
    const double n = norm();
    if (!(n > 0.0)) throw NumericalError("cannot normalize a zero state");
    const double scale = 1.0 / std::sqrt(n);
    for (auto& a : amps_) a *= scale;
}

WaveState init_even_state(const AngularGrid& grid) {
    std::vector<cplx> amps(grid.size());
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    for (std::size_t j = 0; j < grid.size(); ++j) amps[j] = std::cos(grid.theta(j)) * inv_sqrt_pi;
    return WaveState(grid, std::move(amps), Representation::angle);
}

WaveState plane_wave(const AngularGrid& grid, long index) {
    std::vector<cplx> amps(grid.size());
    amps[grid.slot_of(index)] = 1.0;
    return WaveState(grid, std::move(amps), Representation::momentum);
}

WaveState to_momentum(const WaveState& state) {
    if (state.representation() != Representation::angle) {
        throw ConfigError("to_momentum expects an angle-representation state");
    }
    WaveState out = state;
    out.transform_to(Representation::momentum);
    return out;
}

WaveState to_angle(const WaveState& state) {
    if (state.representation() != Representation::momentum) {
        throw ConfigError("to_angle expects a momentum-representation state");
    }
    WaveState out = state;
    out.transform_to(Representation::angle);
    return out;
}

std::vector<double> momentum_probabilities(const WaveState& state) {
    WaveState m = state;
    m.transform_to(Representation::momentum);
    std::vector<double> probs(m.size());
    const auto amps = m.amplitudes();
    for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = std::norm(amps[k]);
    return probs;
}

cplx inner_product(const WaveState& a, const WaveState& b) {
    if (!(a.grid() == b.grid())) throw ConfigError("inner product of states on different grids");
    WaveState ac = a;
    ac.transform_to(b.representation());
    cplx sum = 0.0;
    const auto x = ac.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t k = 0; k < x.size(); ++k) sum += std::conj(x[k]) * y[k];
    return b.representation() == Representation::angle ? sum * b.grid().spacing() : sum;
}

double fidelity(const WaveState& a, const WaveState& b) { return std::norm(inner_product(a, b)); }

}  // namespace ratchet
