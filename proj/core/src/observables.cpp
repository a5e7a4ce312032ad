#include "ratchet/observables.hpp"

#include <algorithm>
#include <cmath>

namespace ratchet {

namespace {

struct Moments {
    double p = 0.0;
    double p2 = 0.0;
};

Moments moments_of(const WaveState& momentum_state) {
    const auto& grid = momentum_state.grid();
    const auto amps = momentum_state.amplitudes();
    Moments m;
    for (std::size_t k = 0; k < amps.size(); ++k) {
        const double w = std::norm(amps[k]);
        const double p = grid.momentum_at(k);
        m.p += w * p;
        m.p2 += w * p * p;
    }
    return m;
}

WaveState in_momentum(const WaveState& state) {
    WaveState m = state;
    m.transform_to(Representation::momentum);
    return m;
}

// 1 - sum_n w_n exp(-i eps n), written as sum_n w_n [2 sin^2(eps n / 2) + i sin(eps n)]
// so small eps does not cancel against the unit norm.
cplx translation_defect(const WaveState& momentum_state, double epsilon) {
    const auto& grid = momentum_state.grid();
    const auto amps = momentum_state.amplitudes();
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < amps.size(); ++k) {
        const double x = epsilon * static_cast<double>(grid.index_at(k));
        const double w = std::norm(amps[k]);
        const double s = std::sin(0.5 * x);
        re += w * 2.0 * s * s;
        im += w * std::sin(x);
    }
    return {re, im};
}

double variance_otoc(const Moments& m, const SystemParams& params) {
    const double scale = params.translation / params.hbar;
    return scale * scale * (m.p2 - m.p * m.p);
}

}  // namespace

double mean_momentum(const WaveState& state) { return moments_of(in_momentum(state)).p; }

double mean_energy(const WaveState& state) { return moments_of(in_momentum(state)).p2; }

std::vector<MomentumBin> momentum_distribution(const WaveState& state) {
    const WaveState m = in_momentum(state);
    const auto& grid = m.grid();
    const auto amps = m.amplitudes();
    std::vector<MomentumBin> bins;
    bins.reserve(amps.size());
    for (long n = grid.min_index(); n <= grid.max_index(); ++n) {
        const auto slot = grid.slot_of(n);
        bins.push_back({n, grid.momentum_at(slot), std::norm(amps[slot])});
    }
    return bins;
}

double otoc_variance(const WaveState& state, const SystemParams& params) {
    return variance_otoc(moments_of(in_momentum(state)), params);
}

cplx otoc_translation(const WaveState& state, const SystemParams& params) {
    return translation_defect(in_momentum(state), params.translation);
}

cplx autocorrelation(const WaveState& state_t, const WaveState& state_0) {
    return inner_product(state_0, state_t);
}

void TimeSeries::reserve(std::size_t n) {
    time.reserve(n);
    p_mean.reserve(n);
    p2_mean.reserve(n);
    otoc_var.reserve(n);
    otoc_trans.reserve(n);
    autocorr.reserve(n);
}

void SeriesRecorder::operator()(int t, const WaveState& state) {
    const WaveState m = in_momentum(state);
    const auto amps = m.amplitudes();
    if (initial_momentum_.empty()) initial_momentum_.assign(amps.begin(), amps.end());
    if (initial_momentum_.size() != amps.size()) throw ConfigError("recorder grid changed mid-run");

    const Moments mom = moments_of(m);
    cplx overlap = 0.0;
    for (std::size_t k = 0; k < amps.size(); ++k) overlap += std::conj(initial_momentum_[k]) * amps[k];

    series_.time.push_back(t);
    series_.p_mean.push_back(mom.p);
    series_.p2_mean.push_back(mom.p2);
    series_.otoc_var.push_back(variance_otoc(mom, params_));
    series_.otoc_trans.push_back(translation_defect(m, params_.translation));
    series_.autocorr.push_back(overlap);
}

KickObserver SeriesRecorder::observer() {
    return [this](int t, const WaveState& s) { (*this)(t, s); };
}

RecordedRun record_evolution(const WaveState& initial, const SystemParams& params, int kicks,
                             const EvolveOptions& options) {
    WaveState state = initial;
    SeriesRecorder recorder(params);
    EvolutionReport report = evolve(state, params, kicks, recorder.observer(), options);
    return {recorder.take(), report, std::move(state)};
}

}  // namespace ratchet
