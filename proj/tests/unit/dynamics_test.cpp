#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jrsim/dynamics.hpp"
#include "jrsim/error.hpp"
#include "oracles.hpp"

using namespace jrsim;

namespace {

const PhysicalScale kNatural = PhysicalScale::centered(1.0, 40.0, 1.0);

SampledProfile trapped(std::size_t n) {
    return sample_on_grid(MassProfile::kink_from_opacity(kNatural, 40.0, 40.0), Grid(kNatural, n));
}

}  // namespace

TEST_CASE("chirality spinors are sigma_x eigenvectors") {
    const auto p = chirality_spinor(Chirality::plus);
    const auto m = chirality_spinor(Chirality::minus);
    CHECK(std::abs(p.upper - p.lower) == 0.0);
    CHECK(std::abs(m.upper + m.lower) == 0.0);
    CHECK(std::norm(p.upper) + std::norm(p.lower) == doctest::Approx(1.0));
}

TEST_CASE("gaussian spinor moments") {
    const Grid g(kNatural, 4000);
    Warnings w;
    const auto f = gaussian_spinor(g, 1.2, 3.0, chirality_spinor(Chirality::plus), &w);
    CHECK(w.empty());
    CHECK(f.norm2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.mean_position() == doctest::Approx(3.0).epsilon(1e-12));
    // Density is exp(-u^2/sigma^2), so its standard deviation is sigma / sqrt 2.
    CHECK(f.rms_width() == doctest::Approx(1.2 / std::numbers::sqrt2).epsilon(1e-8));

    Warnings coarse;
    gaussian_spinor(Grid(kNatural, 40), 1.2, 0.0, chirality_spinor(Chirality::plus), &coarse);
    CHECK(coarse.size() == 1);

    CHECK_THROWS_AS(gaussian_spinor(g, 0.0, 0.0, chirality_spinor(Chirality::plus)), ConfigError);
    CHECK_THROWS_AS(gaussian_spinor(g, 1.0, 30.0, chirality_spinor(Chirality::plus)), DomainError);
}

TEST_CASE("zero mode state") {
    const Grid g(kNatural, 4000);
    const auto kink = MassProfile::kink_from_opacity(kNatural, 40.0, 40.0);

    SUBCASE("envelope follows exp(-Phi)") {
        Warnings w;
        const auto f = zero_mode_state(kink, g, kNatural, Chirality::plus, &w);
        CHECK(w.empty());
        CHECK(f.norm2() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(f.mean_position()) < 1e-10);
        for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(f.psi1[i] == f.psi2[i]);
        // Compare shape to the closed form for a tanh kink:
        // Phi = (d0 / lambda) ln cosh(lambda z) / v0.
        const double d0 = 1.0, lambda = 1.0;
        const std::size_t mid = g.size() / 2;
        for (std::size_t i : {mid + 10, mid + 200, mid + 600}) {
            const double z = g.midpoint(i);
            const double ratio = std::abs(f.psi1[i]) / std::abs(f.psi1[mid]);
            const double phi = d0 / lambda * std::log(std::cosh(lambda * z)) -
                               d0 / lambda * std::log(std::cosh(lambda * g.midpoint(mid)));
            CHECK(ratio == doctest::Approx(std::exp(-phi)).epsilon(1e-4));
        }
    }

    SUBCASE("wrong chirality is not normalizable and fails the residual") {
        Warnings w;
        const auto bad = zero_mode_state(kink, g, kNatural, Chirality::minus, &w);
        REQUIRE(w.size() == 1);
        CHECK(w[0].find("non-normalizable") != std::string::npos);
        const auto s = sample_on_grid(kink, g);
        const auto good = zero_mode_state(kink, g, kNatural, Chirality::plus);
        CHECK(hamiltonian_residual(bad, s, kNatural) >= 10.0 * hamiltonian_residual(good, s, kNatural));
    }
}

TEST_CASE("residual converges at second order") {
    const auto kink = MassProfile::kink_from_opacity(kNatural, 40.0, 40.0);
    double prev = 0.0;
    for (std::size_t n : {2000u, 4000u, 8000u}) {
        const Grid g(kNatural, n);
        const double r = hamiltonian_residual(zero_mode_state(kink, g, kNatural), sample_on_grid(kink, g), kNatural);
        if (prev > 0.0) CHECK(prev / r == doctest::Approx(4.0).epsilon(0.1));
        prev = r;
    }
}

TEST_CASE("massless evolution is exact advection") {
    const Grid g(kNatural, 400);
    const auto zero = sample_on_grid(MassProfile::constant(kNatural, 0.0), g);
    SpinorField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        f.psi1[i] = cplx(std::sin(0.1 * i), 0.3);
        f.psi2[i] = cplx(0.0, std::cos(0.07 * i));
    }
    const SplitStepPropagator prop(zero, kNatural);
    CHECK(prop.dt() == doctest::Approx(g.dz()));
    SpinorField e = f;
    const std::size_t k = 37;
    for (std::size_t s = 0; s < k; ++s) prop.advance(e);
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(e.psi1[(i + k) % n] == f.psi1[i]);
        REQUIRE(e.psi2[i] == f.psi2[(i + k) % n]);
    }
}

TEST_CASE("uniform mass rotates a uniform spinor") {
    const Grid g(kNatural, 200);
    const double delta = 0.8;
    const auto s = sample_on_grid(MassProfile::constant(kNatural, delta), g);
    SpinorField f(g);
    for (auto& v : f.psi1) v = 1.0;
    const SplitStepPropagator prop(s, kNatural);
    const std::size_t steps = 333;
    for (std::size_t i = 0; i < steps; ++i) prop.advance(f);
    const double t = steps * prop.dt();
    for (std::size_t i = 0; i < g.size(); ++i) {
        REQUIRE(std::abs(f.psi1[i] - std::cos(delta * t)) < 1e-12);
        REQUIRE(std::abs(f.psi2[i] - std::sin(delta * t)) < 1e-12);
    }
}

TEST_CASE("norm is conserved over 1e4 steps") {
    const Grid g(kNatural, 4000);
    const auto s = trapped(4000);
    auto f = gaussian_spinor(g, 1.2, 0.0, chirality_spinor(Chirality::plus));
    const SplitStepPropagator prop(s, kNatural);
    const double n0 = f.norm2();
    double drift = 0.0;
    for (int i = 0; i < 10000; ++i) {
        prop.advance(f);
        if (i % 100 == 0) drift = std::max(drift, std::abs(f.norm2() - n0));
    }
    drift = std::max(drift, std::abs(f.norm2() - n0));
    CHECK(drift < 1e-12);
}

TEST_CASE("evolve records the requested snapshots") {
    const Grid g(kNatural, 1000);
    const auto s = trapped(1000);
    const auto init = zero_mode_state(MassProfile::kink_from_opacity(kNatural, 40.0, 40.0), g, kNatural);
    const auto traj = evolve(init, s, kNatural, EvolutionConfig{250, 100});
    REQUIRE(traj.snapshots.size() == 4);  // 0, 100, 200, 250
    CHECK(traj.snapshots[0].t == 0.0);
    CHECK(traj.snapshots[3].t == doctest::Approx(250 * traj.dt));
    CHECK(traj.observables.size() == traj.snapshots.size());
    CHECK(traj.observables[0].overlap0 == doctest::Approx(1.0));
    CHECK(traj.observables.back().overlap0 > 0.9999);

    const auto exact = evolve(init, s, kNatural, EvolutionConfig{200, 100});
    CHECK(exact.snapshots.size() == 3);

    CHECK_THROWS_AS(evolve(init, s, kNatural, EvolutionConfig{10, 0}), ConfigError);
    CHECK_THROWS_AS(evolve(init, trapped(500), kNatural, EvolutionConfig{10, 5}), ConfigError);
}

TEST_CASE("free packet reaching the seam raises a wraparound warning") {
    const Grid g(kNatural, 400);
    const auto zero = sample_on_grid(MassProfile::constant(kNatural, 0.0), g);
    const auto init = gaussian_spinor(g, 1.2, 0.0, chirality_spinor(Chirality::plus));
    Warnings w;
    evolve(init, zero, kNatural, EvolutionConfig{300, 100}, &w);
    CHECK(w.size() == 1);
    Warnings none;
    evolve(init, zero, kNatural, EvolutionConfig{50, 10}, &none);
    CHECK(none.empty());
}

TEST_CASE("measure") {
    const Grid g(kNatural, 1000);
    const auto f = gaussian_spinor(g, 1.2, -2.0, chirality_spinor(Chirality::minus));
    const auto o = measure(f, f, 1.5);
    CHECK(o.t == 1.5);
    CHECK(o.norm2 == doctest::Approx(1.0));
    CHECK(o.mean_z == doctest::Approx(-2.0));
    CHECK(o.overlap0 == doctest::Approx(1.0));
    CHECK(std::abs(inner_product(f, f) - cplx(1.0)) < 1e-12);
}
