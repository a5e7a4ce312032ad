#pragma once

#include <vector>

#include "ratchet/params.hpp"
#include "ratchet/propagator.hpp"
#include "ratchet/wave_state.hpp"

namespace ratchet {

/// sum_n p_n |psi_n|^2
double mean_momentum(const WaveState& state);

/// sum_n p_n^2 |psi_n|^2
double mean_energy(const WaveState& state);

struct MomentumBin {
    long index;
    double momentum;
    double probability;
};

/// Distribution sorted by ascending n.
std::vector<MomentumBin> momentum_distribution(const WaveState& state);

/// Variance form of the OTOC, (eps / hbar)^2 (<p^2> - <p>^2).
double otoc_variance(const WaveState& state, const SystemParams& params);

/// Translation form of the OTOC, 1 - sum_n |psi_n|^2 exp(-i eps p_n / hbar).
cplx otoc_translation(const WaveState& state, const SystemParams& params);

/// A(t) = <psi(0)|psi(t)>.
cplx autocorrelation(const WaveState& state_t, const WaveState& state_0);

/// Per-kick observables. All columns share one length; time runs 0, 1, 2, ...
struct TimeSeries {
    std::vector<int> time;
    std::vector<double> p_mean;
    std::vector<double> p2_mean;
    std::vector<double> otoc_var;
    std::vector<cplx> otoc_trans;
    std::vector<cplx> autocorr;

    [[nodiscard]] std::size_t size() const noexcept { return time.size(); }
    void reserve(std::size_t n);
};

/// Observer that appends one TimeSeries row per call, measuring the
/// autocorrelation against the state it first sees.
class SeriesRecorder {
public:
    explicit SeriesRecorder(SystemParams params) : params_(params) {}

    void operator()(int t, const WaveState& state);
    [[nodiscard]] KickObserver observer();

    [[nodiscard]] const TimeSeries& series() const noexcept { return series_; }
    [[nodiscard]] TimeSeries take() { return std::move(series_); }

private:
    SystemParams params_;
    std::vector<cplx> initial_momentum_;
    TimeSeries series_;
};

/// Convenience wrapper: evolves a copy of `initial` and records every kick.
struct RecordedRun {
    TimeSeries series;
    EvolutionReport report;
    WaveState final_state;
};
RecordedRun record_evolution(const WaveState& initial, const SystemParams& params, int kicks,
                             const EvolveOptions& options = {});

}  // namespace ratchet
