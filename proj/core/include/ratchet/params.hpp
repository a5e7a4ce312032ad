#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace ratchet {

/// Thrown when caller-supplied parameters or configuration are invalid.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a run violates a numerical diagnostic (norm drift, aliasing).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kResonantHbar = 4.0 * std::numbers::pi;

/// Physical knobs of the kicked Gross-Pitaevskii ratchet rotor.
///
/// The kick potential is K [sin(theta) + alpha sin(2 theta + phi)] plus the
/// self-interaction g |psi(theta)|^2; free evolution between kicks is
/// exp(-i p^2 / 2 hbar). The ratchet phase is stored unwrapped and only ever
/// enters through trigonometric functions.
struct SystemParams {
    double kick_strength = 1.0;      // K
    double ratchet_amplitude = 2.0;  // alpha
    double ratchet_phase = 0.0;      // phi, radians
    double interaction = 0.0;        // g
    double hbar = 1.0;               // effective Planck constant
    double translation = 1e-5;       // OTOC translation epsilon

    // Principal quantum resonance hbar = 4 pi. Set through at_resonance()
    // so the free propagator is the exact identity rather than a rounded
    // exp(-2 pi i n^2).
    bool resonant = false;

    /// Returns a copy pinned to hbar = 4 pi with the resonance flag set.
    [[nodiscard]] SystemParams at_resonance() const {
        SystemParams p = *this;
        p.hbar = kResonantHbar;
        p.resonant = true;
        return p;
    }

    /// Throws ConfigError on non-finite fields, hbar <= 0, epsilon < 0, or a
    /// resonance flag that disagrees with hbar.
    void validate() const;

    [[nodiscard]] std::string describe() const;
};

}  // namespace ratchet
