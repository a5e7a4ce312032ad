#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ratchet/analytic.hpp"

using namespace ratchet;
using std::numbers::pi;

namespace {

SystemParams point(double k, double alpha, double phi, double g) {
    SystemParams p;
    p.kick_strength = k;
    p.ratchet_amplitude = alpha;
    p.ratchet_phase = phi;
    p.interaction = g;
    return p.at_resonance();
}

}  // namespace

TEST_CASE("current law values") {
    CHECK(std::abs(analytic::predict_current(point(1, 2, pi / 2, 10), 100)) < 1e-12);
    CHECK(analytic::predict_current(point(1, 2, 0, 0), 100) == doctest::Approx(-200.0));
    CHECK(analytic::predict_current(point(1, -2, 0, 0), 100) == doctest::Approx(200.0));
    CHECK(analytic::predict_current(point(1, 2, 0.3, 4), 17) ==
          doctest::Approx(analytic::predict_current(point(1, 2, 2 * pi - 0.3, 4), 17)));
    CHECK(analytic::predict_current(point(1, 2, 0.3, 4), 17) ==
          doctest::Approx(-analytic::predict_current(point(1, 2, pi - 0.3, 4), 17)));
}

TEST_CASE("energy law values") {
    CHECK(analytic::predict_energy(point(1, 2, pi / 4, 10), 0) == doctest::Approx(16 * pi * pi));
    CHECK(analytic::growth_rate_G(point(1, 2, pi / 4, 10)) == doctest::Approx(22.819).epsilon(1e-4));
    CHECK(analytic::predict_energy(point(1, 2, pi / 4, 10), 100) ==
          doctest::Approx(22.8199e4 + 16 * pi * pi).epsilon(1e-4));
    CHECK(analytic::growth_rate_G(point(1, 2, 0.0, 0)) == doctest::Approx(8.75));
    for (double phi : {0.0, 0.7, pi / 2, 2.0, 4.0}) {
        CHECK(analytic::growth_rate_G(point(1, 2, phi, 0)) == doctest::Approx(8.75));
    }
}

TEST_CASE("phase-odd part of G") {
    for (double phi : {0.2, 1.0, 2.5}) {
        const auto plus = point(1.3, 1.7, phi, 6), minus = point(1.3, 1.7, -phi, 6);
        CHECK(analytic::growth_rate_G(plus) - analytic::growth_rate_G(minus) ==
              doctest::Approx(4.0 / pi * 1.7 * 1.3 * 6 * std::sin(phi)));
    }
}

TEST_CASE("otoc law and its identity with the moments") {
    const auto p = point(1, 2, pi / 4, 10);
    const double eps2 = std::pow(p.translation / (4 * pi), 2);
    CHECK(analytic::predict_otoc(p, 0) == 0.0);
    CHECK(analytic::growth_rate_R(p) / eps2 == doctest::Approx(20.819).epsilon(1e-4));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const auto q = oracle::random_params(rng, true);
        const double t = 1 + i * 5;
        const double e2 = std::pow(q.translation / q.hbar, 2);
        const double c = analytic::predict_current(q, t);
        CHECK(analytic::predict_otoc(q, t) ==
              doctest::Approx(e2 * (analytic::predict_energy(q, t) - 16 * pi * pi - c * c)).epsilon(1e-10));
    }
    auto z = p;
    z.translation = 0.0;
    CHECK(analytic::growth_rate_R(z) == 0.0);
}

TEST_CASE("gamma law") {
    CHECK(analytic::gamma_theory(0.0, 1.0) == 0.0);
    CHECK(analytic::gamma_theory(2.0, 1.0) == doctest::Approx(0.34035).epsilon(1e-4));
    double prev = 0.0;
    for (double g : {0.3, 0.5, 1.0, 2.0}) {
        const double v = analytic::gamma_theory(g, 1.0);
        CHECK(v > prev);
        CHECK(analytic::gamma_theory(g, 0.5) > v);
        prev = v;
    }
}

TEST_CASE("moment oracle at t = 0") {
    const auto m = analytic::moment_oracle(point(1, 2, pi / 4, 10), 0);
    CHECK(m.converged);
    CHECK(std::abs(m.p_mean) < 1e-10);
    CHECK(m.p2_mean == doctest::Approx(16 * pi * pi).epsilon(1e-12));
}

TEST_CASE("moment oracle with a symmetric potential has no current") {
    const auto m = analytic::moment_oracle(point(1.4, 0.0, 0.0, 0.0), 33);
    CHECK(std::abs(m.p_mean) < 1e-8);
}

TEST_CASE("moment oracle agrees with the closed forms") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> tt(1, 100);
    for (int i = 0; i < 20; ++i) {
        const auto p = oracle::random_params(rng, true);
        const int t = tt(rng);
        const auto m = analytic::moment_oracle(p, t);
        CHECK(m.converged);
        const double pc = analytic::predict_current(p, t);
        CHECK(std::abs(m.p_mean - pc) <= 1e-8 * std::max(1.0, std::abs(pc)));
        CHECK(m.p2_mean == doctest::Approx(analytic::predict_energy(p, t)).epsilon(1e-8));
    }
}

TEST_CASE("moment oracle node count checks") {
    CHECK_THROWS_AS(analytic::moment_oracle(point(1, 2, 0, 0), 5, 32), ConfigError);
    CHECK_THROWS_AS(analytic::moment_oracle(point(1, 2, 0, 0), 5, 1001), ConfigError);
    // The integrands are trigonometric polynomials of degree <= 6, so even the
    // smallest allowed rule is exact and the halving check agrees.
    const auto m = analytic::moment_oracle(point(2, 2, 0.4, 10), 100, 64);
    CHECK(m.converged);
    CHECK(m.p2_mean == doctest::Approx(analytic::predict_energy(point(2, 2, 0.4, 10), 100)).epsilon(1e-12));
}

TEST_CASE("analytic laws require the resonance") {
    SystemParams p;
    CHECK_THROWS_AS(analytic::moment_oracle(p, 1), ConfigError);
}
