#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ratchet/params.hpp"

namespace ratchet {

/// One comparison of closed form, quadrature oracle and simulation.
struct VerifyCase {
    SystemParams params;
    int kicks = 0;
    double p_closed = 0.0, p_oracle = 0.0, p_sim = 0.0;
    double p2_closed = 0.0, p2_oracle = 0.0, p2_sim = 0.0;
    double max_rel_error = 0.0;
    bool passed = false;
};

struct VerifyReport {
    std::vector<VerifyCase> cases;
    double tolerance = 1e-6;
    [[nodiscard]] bool passed() const;
};

/// Checks the resonance laws three ways on a fixed parameter set plus
/// `random_cases` draws of (K, alpha, phi, g). Relative errors are taken
/// against max(|x|, 1) so a vanishing current is compared absolutely.
VerifyReport verify_resonance(std::size_t grid_n = 4096, int random_cases = 8, std::uint64_t seed = 1,
                              double tolerance = 1e-6);

std::string format_report(const VerifyReport& report);

}  // namespace ratchet
