#pragma once

#include <cstddef>
#include <vector>

namespace ratchet {

/// Equispaced angle grid theta_j = 2 pi j / N on [0, 2 pi) paired with the
/// momentum ladder p_n = n hbar, n in [-N/2, N/2).
///
/// Momentum coefficients are stored in transform order: slot k holds
/// n = k for k < N/2 and n = k - N otherwise, so n = -N/2 sits at slot N/2.
class AngularGrid {
public:
    AngularGrid(std::size_t n_points, double hbar);

    [[nodiscard]] std::size_t size() const noexcept { return n_points_; }
    [[nodiscard]] double hbar() const noexcept { return hbar_; }
    [[nodiscard]] double spacing() const noexcept;

    [[nodiscard]] double theta(std::size_t j) const noexcept;
    [[nodiscard]] std::vector<double> thetas() const;

    /// Momentum quantum number stored at transform slot k.
    [[nodiscard]] long index_at(std::size_t slot) const noexcept;
    /// Transform slot holding quantum number n; n must lie in [-N/2, N/2).
    [[nodiscard]] std::size_t slot_of(long n) const;
    [[nodiscard]] double momentum_at(std::size_t slot) const noexcept {
        return static_cast<double>(index_at(slot)) * hbar_;
    }

    [[nodiscard]] long min_index() const noexcept { return -static_cast<long>(n_points_ / 2); }
    [[nodiscard]] long max_index() const noexcept { return static_cast<long>(n_points_ / 2) - 1; }

    /// Largest representable |n| reached before the outer tenth of the band.
    [[nodiscard]] long edge_threshold() const noexcept;

    /// <p^2> of a state spread uniformly over the band, (hbar N / 2)^2 / 3.
    [[nodiscard]] double energy_ceiling() const noexcept;

    friend bool operator==(const AngularGrid&, const AngularGrid&) = default;

private:
    std::size_t n_points_;
    double hbar_;
};

/// Validating factory: n_points must be even and at least 8, hbar > 0.
AngularGrid make_grid(std::size_t n_points, double hbar);

}  // namespace ratchet
