#include "ratchet/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace ratchet {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ConfigError("fit_line: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw ConfigError("fit_line needs at least two points");

    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw ConfigError("fit_line: x values are all equal");

    LinearFit fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.slope * x[i] + fit.intercept);
        sse += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
    fit.slope_stderr = n > 2 ? std::sqrt(sse / static_cast<double>(n - 2) / sxx) : 0.0;
    return fit;
}

FitResult fit_localization_length(std::span<const MomentumBin> distribution, double hbar,
                                  const LocalizationWindow& window) {
    if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
    const double lo = std::max(window.p_lo, window.exclude_below_hbar * hbar);
    const double hi = window.p_hi;

    // Average the two tails at each |n|; only |n| with both signs present.
    std::map<long, std::pair<double, int>> tails;
    for (const auto& bin : distribution) {
        auto& slot = tails[std::abs(bin.index)];
        slot.first += bin.probability;
        slot.second += 1;
    }
    std::vector<double> xs, ys;
    for (const auto& [abs_n, acc] : tails) {
        const double p = static_cast<double>(abs_n) * hbar;
        if (acc.second != 2 || p < lo || p > hi) continue;
        const double prob = std::max(acc.first / 2.0, window.probability_floor);
        xs.push_back(p);
        ys.push_back(std::log(prob));
    }
    if (xs.size() < 10) {
        throw ConfigError("localization window holds " + std::to_string(xs.size()) +
                          " momenta; at least 10 are required");
    }
    const LinearFit line = fit_line(xs, ys);
    if (!(line.slope < 0.0)) throw NumericalError("momentum tails are not decaying");

    FitResult out;
    out.value = -1.0 / line.slope;
    out.stderr_value = line.slope_stderr / (line.slope * line.slope);
    out.window_lo = xs.front();
    out.window_hi = xs.back();
    out.r_squared = line.r_squared;
    out.points = line.points;
    return out;
}

namespace {

void check_lengths(std::span<const int> time, std::span<const double> values) {
    if (time.size() != values.size()) throw ConfigError("time and value columns differ in length");
}

}  // namespace

FitResult fit_quadratic_rate(std::span<const int> time, std::span<const double> values,
                             double t_lo, double t_hi) {
    check_lengths(time, values);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < time.size(); ++i) {
        const double t = time[i];
        if (t < t_lo || t > t_hi) continue;
        xs.push_back(t * t);
        ys.push_back(values[i]);
    }
    if (xs.size() < 3) throw ConfigError("quadratic fit window holds fewer than 3 points");
    const LinearFit line = fit_line(xs, ys);
    return {line.slope, line.slope_stderr, t_lo, t_hi, line.r_squared, line.points};
}

FitResult fit_exponential_rate(std::span<const int> time, std::span<const double> values,
                               double t_lo, double t_hi) {
    check_lengths(time, values);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < time.size(); ++i) {
        const double t = time[i];
        if (t < t_lo || t > t_hi) continue;
        if (!(values[i] > 0.0)) throw NumericalError("exponential fit needs positive values");
        xs.push_back(t);
        ys.push_back(std::log(values[i]));
    }
    if (xs.size() < 3) throw ConfigError("exponential fit window holds fewer than 3 points");
    const LinearFit line = fit_line(xs, ys);
    return {line.slope, line.slope_stderr, t_lo, t_hi, line.r_squared, line.points};
}

std::vector<double> moving_average(std::span<const double> values, int width) {
    if (width < 1) throw ConfigError("smoothing width must be at least 1");
    std::vector<double> out(values.size());
    double running = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        running += values[i];
        if (i >= static_cast<std::size_t>(width)) running -= values[i - width];
        const auto count = std::min<std::size_t>(i + 1, static_cast<std::size_t>(width));
        out[i] = running / static_cast<double>(count);
    }
    return out;
}

std::optional<CriticalTime> detect_critical_time(std::span<const int> time,
                                                 std::span<const double> series,
                                                 std::span<const double> baseline,
                                                 const CriticalTimeOptions& options) {
    check_lengths(time, series);
    if (baseline.empty()) throw ConfigError("baseline series is empty");
    if (options.consecutive < 1) throw ConfigError("consecutive run length must be positive");

    const auto smooth_base = moving_average(baseline, options.smoothing);
    const double plateau = std::accumulate(smooth_base.begin(), smooth_base.end(), 0.0) /
                           static_cast<double>(smooth_base.size());
    const double threshold = options.threshold_factor * plateau;

    const auto smooth = moving_average(series, options.smoothing);
    int run = 0;
    for (std::size_t i = 0; i < smooth.size(); ++i) {
        run = smooth[i] > threshold ? run + 1 : 0;
        if (run == options.consecutive) {
            return CriticalTime{time[i + 1 - static_cast<std::size_t>(run)], plateau, threshold};
        }
    }
    return std::nullopt;
}

std::optional<int> saturation_time(std::span<const int> time, std::span<const double> p2,
                                   const AngularGrid& grid, double fraction) {
    check_lengths(time, p2);
    const double cap = fraction * grid.energy_ceiling();
    for (std::size_t i = 0; i < p2.size(); ++i) {
        if (p2[i] > cap) return time[i];
    }
    return std::nullopt;
}

double time_averaged_energy(std::span<const int> time, std::span<const double> values,
                            double t_lo, double t_hi) {
    check_lengths(time, values);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < time.size(); ++i) {
        if (time[i] < t_lo || time[i] > t_hi) continue;
        sum += values[i];
        ++count;
    }
    if (count == 0) throw ConfigError("averaging window contains no samples");
    return sum / static_cast<double>(count);
}

GrowthAnalysis fit_growth_beyond_critical(std::span<const int> time, std::span<const double> p2,
                                          std::span<const double> baseline, const AngularGrid& grid,
                                          const CriticalTimeOptions& options,
                                          double saturation_fraction, int min_points) {
    GrowthAnalysis out;
    out.critical = detect_critical_time(time, p2, baseline, options);
    if (!out.critical) return out;
    out.saturation = saturation_time(time, p2, grid, saturation_fraction);

    const double lo = out.critical->time;
    const double hi = out.saturation ? *out.saturation - 1.0 : static_cast<double>(time.back());
    if (hi - lo + 1.0 < min_points) return out;
    out.rate = fit_exponential_rate(time, p2, lo, hi);
    return out;
}

}  // namespace ratchet
