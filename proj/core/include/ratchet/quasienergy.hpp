#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ratchet/wave_state.hpp"

namespace ratchet {

struct QuasienergyDistribution {
    std::vector<double> epsilon;  // 2 pi k / T_window, k = 0..T_window-1
    std::vector<double> density;  // sums to 1
    double raw_weight = 0.0;      // sum_k |a_k| before normalization; 1 for on-grid tones
};

/// Fourier components of A(t_n), n = 0..T_window-1, on the quasienergy grid
/// 2 pi k / T_window. With a_k = (1/T) sum_t A(t) e^{i eps_k t} the series
/// reads A(t) = sum_k a_k e^{-i eps_k t}; density is |a_k| normalized.
/// Uses the first `window` samples; throws ConfigError when fewer than 256 are available.
QuasienergyDistribution quasienergy_spectrum(std::span<const cplx> autocorr, std::size_t window);

struct SpectralPeak {
    std::size_t bin;
    double epsilon;
    double height;
    double weight;  // height plus neighbours within the merge radius
};

/// Local maxima (cyclic) whose height exceeds `median_factor` times the
/// median density, tallest first. Heights at or below `noise_floor` are
/// round-off, not peaks; this matters when the median itself is round-off.
std::vector<SpectralPeak> find_peaks(const QuasienergyDistribution& dist,
                                     double median_factor = 5.0, double noise_floor = 1e-9);

/// All local maxima with leakage-merged weights (bins within `merge_radius`
/// summed), heaviest first; a diagnostic view of peak dominance.
std::vector<SpectralPeak> merged_peaks(const QuasienergyDistribution& dist,
                                       std::size_t merge_radius = 2);

}  // namespace ratchet
