#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "ratchet/observables.hpp"
#include "ratchet/propagator.hpp"

using namespace ratchet;
using std::numbers::pi;

namespace {

SystemParams fig2_params() {
    SystemParams p;
    p.kick_strength = 1.0;
    p.ratchet_amplitude = 2.0;
    p.ratchet_phase = pi / 4;
    p.interaction = 10.0;
    return p.at_resonance();
}

double max_diff(const WaveState& a, const WaveState& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.amplitudes()[j] - b.amplitudes()[j]));
    return m;
}

}  // namespace

TEST_CASE("kick with K = 0 and g = 0 is the identity") {
    SystemParams p;
    p.kick_strength = 0.0;
    const auto g = make_grid(64, 1.0);
    std::mt19937_64 rng(1);
    const auto s = oracle::random_state(g, rng);
    CHECK(max_diff(kick_operator(s, p), s) < 1e-15);
}

TEST_CASE("kick is a pointwise phase") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const auto p = oracle::random_params(rng, false);
        const auto g = make_grid(128, p.hbar);
        const auto s = oracle::random_state(g, rng);
        const auto k = kick_operator(s, p);
        for (std::size_t j = 0; j < g.size(); ++j) {
            CHECK(std::norm(k.amplitudes()[j]) == doctest::Approx(std::norm(s.amplitudes()[j])).epsilon(1e-12));
        }
        CHECK(k.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("kick phase matches the potential evaluated directly") {
    SystemParams p;
    p.ratchet_phase = 0.3;
    p.interaction = 2.5;
    p.hbar = 0.7;
    const auto g = make_grid(64, p.hbar);
    std::mt19937_64 rng(5);
    const auto s = oracle::random_state(g, rng);
    const auto k = kick_operator(s, p);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double th = g.theta(j);
        const double v = p.kick_strength * (std::sin(th) + p.ratchet_amplitude * std::sin(2 * th + p.ratchet_phase)) +
                         p.interaction * std::norm(s.amplitudes()[j]);
        CHECK(std::abs(k.amplitudes()[j] - s.amplitudes()[j] * std::polar(1.0, -v / p.hbar)) < 1e-13);
    }
}

TEST_CASE("kick rejects unnormalized or momentum input") {
    const auto g = make_grid(32, 1.0);
    auto s = init_even_state(g);
    s.amplitudes()[0] += 1.0;
    CHECK_THROWS_AS(kick_operator(s, SystemParams{}), NumericalError);
    CHECK_THROWS_AS(kick_operator(plane_wave(g, 1), SystemParams{}), ConfigError);
}

TEST_CASE("one resonant kick equals the closed-form state at t = 1") {
    const auto p = fig2_params();
    const auto g = make_grid(4096, p.hbar);
    const auto k = kick_operator(init_even_state(g), p);
    CHECK(max_diff(k, analytic_resonance_state(p, 1, g)) < 1e-12);
}

TEST_CASE("free operator is the identity at resonance") {
    std::mt19937_64 rng(3);
    const auto p = SystemParams{}.at_resonance();
    const auto g = make_grid(256, p.hbar);
    const auto s = to_momentum(oracle::random_state(g, rng, 40));
    const auto f = free_operator(s, p);
    CHECK(f.representation() == Representation::momentum);
    CHECK(max_diff(f, s) == 0.0);
}

TEST_CASE("free operator on a single mode is a global phase") {
    SystemParams p;
    p.hbar = 1.0;
    const auto g = make_grid(32, 1.0);
    const auto f = free_operator(plane_wave(g, 2), p);
    CHECK(std::abs(f.amplitudes()[g.slot_of(2)] - std::polar(1.0, -2.0)) < 1e-14);
    CHECK(f.norm() == doctest::Approx(1.0));
}

TEST_CASE("free operator keeps the angle representation") {
    SystemParams p;
    const auto g = make_grid(32, 1.0);
    const auto f = free_operator(init_even_state(g), p);
    CHECK(f.representation() == Representation::angle);
    // cos(theta) has n = +-1 only, both with phase e^{-i/2}.
    const auto e = init_even_state(g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(std::abs(f.amplitudes()[j] - e.amplitudes()[j] * std::polar(1.0, -0.5)) < 1e-14);
    }
}

TEST_CASE("floquet step with no kick at resonance is the identity") {
    SystemParams p = SystemParams{}.at_resonance();
    p.kick_strength = 0.0;
    const auto g = make_grid(64, p.hbar);
    const auto e = init_even_state(g);
    CHECK(max_diff(floquet_step(e, p), e) < 1e-14);
}

TEST_CASE("evolution reproduces the closed-form resonance state at t = 100") {
    const auto p = fig2_params();
    const auto g = make_grid(4096, p.hbar);
    auto s = init_even_state(g);
    const auto report = evolve(s, p, 100);
    CHECK(report.kicks_applied == 100);
    CHECK(fidelity(s, analytic_resonance_state(p, 100, g)) >= 1.0 - 1e-10);
}

TEST_CASE("resonant evolution matches the closed form for random parameters") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = oracle::random_params(rng, true);
        const auto g = make_grid(4096, p.hbar);
        auto s = init_even_state(g);
        evolve(s, p, 60);
        CHECK(fidelity(s, analytic_resonance_state(p, 60, g)) >= 1.0 - 1e-10);
    }
}

TEST_CASE("closed-form state at t = 0 is the initial state") {
    const auto p = fig2_params();
    const auto g = make_grid(64, p.hbar);
    CHECK(max_diff(analytic_resonance_state(p, 0, g), init_even_state(g)) < 1e-15);
}

TEST_CASE("closed-form state requires the resonance flag") {
    SystemParams p;
    CHECK_THROWS_AS(analytic_resonance_state(p, 1, make_grid(64, 1.0)), ConfigError);
}

TEST_CASE("closed-form density is the initial density") {
    const auto p = fig2_params();
    const auto g = make_grid(256, p.hbar);
    const auto s = analytic_resonance_state(p, 37, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(std::norm(s.amplitudes()[j]) == doctest::Approx(std::pow(std::cos(g.theta(j)), 2) / pi).epsilon(1e-12));
    }
}

TEST_CASE("unitarity over 1000 kicks") {
    std::mt19937_64 rng(23);
    for (bool resonant : {false, true}) {
        for (int trial = 0; trial < 3; ++trial) {
            auto p = oracle::random_params(rng, resonant);
            p.interaction *= 0.2;
            const auto g = make_grid(resonant ? 16384 : 2048, p.hbar);
            auto s = init_even_state(g);
            const auto report = evolve(s, p, 1000);
            CHECK(report.final_norm_drift < 1e-10);
            CHECK(std::abs(s.norm() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("evolution is bit-deterministic") {
    SystemParams p;
    p.interaction = 1.0;
    p.ratchet_phase = pi / 4;
    const auto g = make_grid(1024, p.hbar);
    auto a = init_even_state(g), b = init_even_state(g);
    evolve(a, p, 200);
    evolve(b, p, 200);
    CHECK(max_diff(a, b) == 0.0);
}

TEST_CASE("observer sees t = 0 and every kick") {
    const auto g = make_grid(64, 1.0);
    auto s = init_even_state(g);
    std::vector<int> seen;
    evolve(s, SystemParams{}, 5, [&](int t, const WaveState&) { seen.push_back(t); });
    CHECK(seen == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("aliasing guard flags and aborts") {
    SystemParams p;
    p.kick_strength = 20.0;
    const auto g = make_grid(32, 1.0);
    auto s = init_even_state(g);
    const auto report = evolve(s, p, 20);
    CHECK(report.aliasing_flag);
    CHECK(report.max_edge_probability > 1e-8);

    auto t = init_even_state(g);
    EvolveOptions o;
    o.aliasing_abort = 1e-3;
    CHECK_THROWS_AS(evolve(t, p, 20, {}, o), NumericalError);
}

TEST_CASE("propagator class agrees with the free functions") {
    SystemParams p;
    p.interaction = 3.0;
    p.ratchet_phase = 1.1;
    const auto g = make_grid(256, p.hbar);
    FloquetPropagator prop(g, p);
    auto a = init_even_state(g);
    prop.step(a);
    const auto b = floquet_step(init_even_state(g), p);
    CHECK(max_diff(a, b) < 1e-14);
}
