#include "ratchet/grid.hpp"

#include <cmath>
#include <sstream>

#include "ratchet/params.hpp"

namespace ratchet {

void SystemParams::validate() const {
    const double fields[] = {kick_strength, ratchet_amplitude, ratchet_phase,
                             interaction, hbar, translation};
    for (double v : fields) {
        if (!std::isfinite(v)) throw ConfigError("system parameters must be finite");
    }
    if (hbar <= 0.0) throw ConfigError("hbar must be positive");
    if (translation < 0.0) throw ConfigError("translation epsilon must be non-negative");
    if (resonant && hbar != kResonantHbar) {
        throw ConfigError("resonance flag set but hbar != 4 pi");
    }
}

std::string SystemParams::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "K=" << kick_strength << " alpha=" << ratchet_amplitude
       << " phi=" << ratchet_phase << " g=" << interaction << " hbar=";
    if (resonant) {
        os << "4pi";
    } else {
        os << hbar;
    }
    os << " eps=" << translation;
    return os.str();
}

AngularGrid::AngularGrid(std::size_t n_points, double hbar) : n_points_(n_points), hbar_(hbar) {
    if (n_points < 8 || n_points % 2 != 0) {
        throw ConfigError("grid size must be even and at least 8, got " +
                          std::to_string(n_points));
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigError("hbar must be positive");
}

double AngularGrid::spacing() const noexcept { return kTwoPi / static_cast<double>(n_points_); }

double AngularGrid::theta(std::size_t j) const noexcept {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(n_points_);
}

std::vector<double> AngularGrid::thetas() const {
    std::vector<double> out(n_points_);
    for (std::size_t j = 0; j < n_points_; ++j) out[j] = theta(j);
    return out;
}

long AngularGrid::index_at(std::size_t slot) const noexcept {
    const auto k = static_cast<long>(slot);
    const auto n = static_cast<long>(n_points_);
    return k < n / 2 ? k : k - n;
}

std::size_t AngularGrid::slot_of(long n) const {
    if (n < min_index() || n > max_index()) {
        throw ConfigError("momentum index " + std::to_string(n) + " outside grid band");
    }
    return static_cast<std::size_t>(n >= 0 ? n : n + static_cast<long>(n_points_));
}

long AngularGrid::edge_threshold() const noexcept {
    const auto half = static_cast<long>(n_points_ / 2);
    return half - static_cast<long>(n_points_ / 20);
}

double AngularGrid::energy_ceiling() const noexcept {
    const double pmax = hbar_ * static_cast<double>(n_points_) / 2.0;
    return pmax * pmax / 3.0;
}

AngularGrid make_grid(std::size_t n_points, double hbar) { return AngularGrid(n_points, hbar); }

}  // namespace ratchet
