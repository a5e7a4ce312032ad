#include "ratchet/quasienergy.hpp"

#include <algorithm>
#include <cmath>

#include "ratchet/params.hpp"
#include "ratchet/spectral_transform.hpp"

namespace ratchet {

QuasienergyDistribution quasienergy_spectrum(std::span<const cplx> autocorr, std::size_t window) {
    if (window < 256) throw ConfigError("quasienergy window must be at least 256 kicks");
    if (autocorr.size() < window) {
        throw ConfigError("autocorrelation series shorter than the quasienergy window");
    }

    std::vector<cplx> coeffs(autocorr.begin(), autocorr.begin() + static_cast<long>(window));
    SpectralTransform(window).backward(coeffs);

    QuasienergyDistribution dist;
    dist.epsilon.resize(window);
    dist.density.resize(window);
    const double inv_t = 1.0 / static_cast<double>(window);
    double total = 0.0;
    for (std::size_t k = 0; k < window; ++k) {
        dist.epsilon[k] = kTwoPi * static_cast<double>(k) * inv_t;
        dist.density[k] = std::abs(coeffs[k]) * inv_t;
        total += dist.density[k];
    }
    if (!(total > 0.0)) throw NumericalError("autocorrelation spectrum is identically zero");
    dist.raw_weight = total;
    for (auto& d : dist.density) d /= total;
    return dist;
}

namespace {

bool is_local_max(const std::vector<double>& d, std::size_t k) {
    const std::size_t n = d.size();
    const double left = d[(k + n - 1) % n];
    const double right = d[(k + 1) % n];
    return d[k] > left && d[k] >= right;
}

double median_of(std::vector<double> values) {
    const auto mid = values.begin() + static_cast<long>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (values.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

}  // namespace

std::vector<SpectralPeak> find_peaks(const QuasienergyDistribution& dist, double median_factor,
                                     double noise_floor) {
    const auto& d = dist.density;
    if (d.size() < 3) return {};
    const double cutoff = std::max(median_factor * median_of(d), noise_floor);
    std::vector<SpectralPeak> peaks;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (is_local_max(d, k) && d[k] > cutoff) {
            peaks.push_back({k, dist.epsilon[k], d[k], d[k]});
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const SpectralPeak& a, const SpectralPeak& b) { return a.height > b.height; });
    return peaks;
}

std::vector<SpectralPeak> merged_peaks(const QuasienergyDistribution& dist,
                                       std::size_t merge_radius) {
    const auto& d = dist.density;
    const std::size_t n = d.size();
    std::vector<SpectralPeak> peaks;
    if (n < 3) return peaks;
    for (std::size_t k = 0; k < n; ++k) {
        if (!is_local_max(d, k)) continue;
        double weight = d[k];
        for (std::size_t r = 1; r <= merge_radius; ++r) {
            weight += d[(k + r) % n] + d[(k + n - r % n) % n];
        }
        peaks.push_back({k, dist.epsilon[k], d[k], weight});
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const SpectralPeak& a, const SpectralPeak& b) { return a.weight > b.weight; });
    return peaks;
}

}  // namespace ratchet
