#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ratchet/observables.hpp"

namespace ratchet {

/// Least-squares estimate of one rate or length.
struct FitResult {
    double value = 0.0;
    double stderr_value = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Ordinary least squares y = slope x + intercept.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct LocalizationWindow {
    double p_lo = 20.0;
    double p_hi = 200.0;
    // Central exclusion in units of hbar; the window's lower edge is raised to it.
    double exclude_below_hbar = 5.0;
    double probability_floor = 1e-30;
};

/// Fits ln P(|p|) = c - |p| / xi over the window, P being the average of the
/// two tails (P(n) + P(-n)) / 2. Returns xi in momentum units.
/// Throws ConfigError when fewer than 10 momenta fall inside the window.
FitResult fit_localization_length(std::span<const MomentumBin> distribution, double hbar,
                                  const LocalizationWindow& window = {});

/// Fits values = rate t^2 + offset over t in [t_lo, t_hi]; the rate is G
/// (for <p^2>) or R (for the OTOC).
FitResult fit_quadratic_rate(std::span<const int> time, std::span<const double> values,
                             double t_lo = 20.0, double t_hi = 100.0);

/// Fits ln(values) = gamma t + c over t in [t_lo, t_hi].
FitResult fit_exponential_rate(std::span<const int> time, std::span<const double> values,
                               double t_lo, double t_hi);

struct CriticalTimeOptions {
    double threshold_factor = 2.0;
    int consecutive = 10;
    int smoothing = 10;
};

struct CriticalTime {
    int time = 0;
    double plateau = 0.0;    // mean of the smoothed baseline
    double threshold = 0.0;  // threshold_factor * plateau
};

/// Trailing moving average of width `width` (shorter at the start).
std::vector<double> moving_average(std::span<const double> values, int width);

/// First kick at which the smoothed series stays above threshold_factor times
/// the smoothed baseline's mean for `consecutive` kicks. nullopt if never.
std::optional<CriticalTime> detect_critical_time(std::span<const int> time,
                                                 std::span<const double> series,
                                                 std::span<const double> baseline,
                                                 const CriticalTimeOptions& options = {});

/// First kick at which <p^2> exceeds `fraction` of the grid's uniform-spread
/// energy; past it exponential growth is bent over by the finite band.
std::optional<int> saturation_time(std::span<const int> time, std::span<const double> p2,
                                   const AngularGrid& grid, double fraction = 0.05);

/// Mean of values over t in [t_lo, t_hi].
double time_averaged_energy(std::span<const int> time, std::span<const double> values,
                            double t_lo = 500.0, double t_hi = 1000.0);

struct GrowthAnalysis {
    std::optional<CriticalTime> critical;
    std::optional<int> saturation;
    std::optional<FitResult> rate;  // empty when the window is too short
};

/// Exponential rate of <p^2> beyond the critical time: t_c from the g = 0
/// baseline, window [t_c, t_sat) capped by saturation_time, then
/// fit_exponential_rate. Needs at least `min_points` kicks in the window.
GrowthAnalysis fit_growth_beyond_critical(std::span<const int> time, std::span<const double> p2,
                                          std::span<const double> baseline, const AngularGrid& grid,
                                          const CriticalTimeOptions& options = {},
                                          double saturation_fraction = 0.05, int min_points = 4);

}  // namespace ratchet
