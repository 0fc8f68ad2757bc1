#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "jrsim/error.hpp"
#include "jrsim/scattering.hpp"
#include "oracles.hpp"

using namespace jrsim;

namespace {

const PhysicalScale kScale = PhysicalScale::centered(17.0, 300.0);

SampledProfile sampled(const MassProfile& p, std::size_t n = 3000) { return sample_on_grid(p, Grid(kScale, n)); }

// Random profile drawn from the four families at moderate opacity, where the
// naive oracle product is still well conditioned.
MassProfile random_profile(std::mt19937_64& gen, double theta) {
    std::uniform_real_distribution<double> sharp(1.0, 8.0);
    switch (gen() % 4) {
        case 0: return MassProfile::kink_from_opacity(kScale, theta, sharp(gen));
        case 1: return MassProfile::sine_from_opacity(kScale, theta, sharp(gen));
        case 2: return MassProfile::constant_from_opacity(kScale, theta);
        default:
            return MassProfile::noisy(MassProfile::kink_from_opacity(kScale, theta, sharp(gen)),
                                      NoiseSpec{0.3, gen(), 0.1});
    }
}

}  // namespace

TEST_CASE("mode names round trip") {
    CHECK(parse_scattering_mode("ideal") == ScatteringMode::ideal);
    CHECK(parse_scattering_mode(to_string(ScatteringMode::generalized)) == ScatteringMode::generalized);
    CHECK_THROWS_AS(parse_scattering_mode("bogus"), ConfigError);
}

TEST_CASE("generator forms") {
    const MixingAngle ideal;
    const Mat2 n = generator_matrix(0.7, 2.0, kScale, ideal, ScatteringMode::ideal);
    CHECK(std::abs(n.m11 - cplx(0.0, 0.7 / 17.0)) < 1e-15);
    CHECK(std::abs(n.m22 + cplx(0.0, 0.7 / 17.0)) < 1e-15);
    CHECK(std::abs(n.m12 + 2.0 / 17.0) < 1e-15);
    CHECK(std::abs(n.m21 + 2.0 / 17.0) < 1e-15);
    CHECK(std::abs(n.trace()) == 0.0);

    // Generalized: N = i dw A sz + dw B sy - C sx.
    const auto s1 = PhysicalScale::centered(17.0, 300.0, 1.0);
    const MixingAngle f(0.2);
    const auto k = coefficients(f, s1, 2.0);
    const Mat2 g = generator_matrix(0.7, 2.0, s1, f, ScatteringMode::generalized);
    const Mat2 expect = cplx(0.0, 0.7 * k.a) * Mat2::sigma_z() + cplx(0.7 * k.b) * Mat2::sigma_y() -
                        cplx(k.c) * Mat2::sigma_x();
    CHECK(max_abs_diff(g, expect) < 1e-15);
}

TEST_CASE("cell propagator matches the Taylor oracle") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const PauliVector pv{cplx(u(gen), u(gen)), cplx(u(gen), u(gen)), cplx(u(gen), u(gen))};
        for (double dz : {1e-9, 1e-4, 0.1, 0.7}) {
            const Mat2 a = cell_propagator(pv, dz);
            const Mat2 b = oracle::expm_taylor(cplx(dz) * pv.matrix());
            REQUIRE(max_abs_diff(a, b) <= 1e-12 * std::max(1.0, b.max_abs()));
            REQUIRE(max_abs_diff(cell_propagator(pv.matrix(), dz), a) <= 1e-14 * std::max(1.0, a.max_abs()));
        }
    }
    CHECK(max_abs_diff(cell_propagator(PauliVector{}, 0.3), Mat2::identity()) == 0.0);
}

TEST_CASE("hadamard conjugation") {
    const PauliVector v{cplx(1.0, 2.0), cplx(-0.5, 0.1), cplx(3.0, -1.0)};
    const double r = 1.0 / std::sqrt(2.0);
    const Mat2 h{r, r, r, -r};
    CHECK(max_abs_diff(hadamard_conjugate(v.matrix()), h * v.matrix() * h) < 1e-15);
    CHECK(max_abs_diff(v.hadamard().matrix(), h * v.matrix() * h) < 1e-15);
    CHECK(max_abs_diff(hadamard_conjugate(hadamard_conjugate(v.matrix())), v.matrix()) < 1e-15);
}

TEST_CASE("total transfer equals the naive product at moderate opacity") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> theta(0.25, 3.0);
    std::uniform_real_distribution<double> freq(-2.0, 2.0);
    const std::vector<double> fractions{0.0, 0.1, 0.2, 0.3};
    for (int c = 0; c < 40; ++c) {
        const auto p = random_profile(gen, theta(gen));
        const auto s = sampled(p);
        const double dw = freq(gen) * p.amplitude();
        const MixingAngle angle(fractions[c % 4]);
        const auto mode = c % 2 ? ScatteringMode::generalized : ScatteringMode::ideal;
        const Mat2 w = total_transfer(s, dw, kScale, angle, mode);
        const Mat2 ref = oracle::naive_transfer(s.values, s.grid.dz(), [&](double d) {
            return generator_matrix(dw, d, kScale, angle, mode);
        });
        REQUIRE(max_abs_diff(w, ref) <= 1e-9 * std::max(1.0, ref.max_abs()));
    }
}

TEST_CASE("property: flux and transfer invariants over random cases") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> theta(0.25, 3.0);
    std::uniform_real_distribution<double> freq(-2.0, 2.0);
    const std::vector<double> fractions{0.0, 0.1, 0.2, 0.3};
    double flux = 0.0, det = 0.0, pu = 0.0;
    for (int c = 0; c < 120; ++c) {
        const auto p = random_profile(gen, theta(gen));
        const auto s = sampled(p);
        const double dw = freq(gen) * p.amplitude();
        const MixingAngle angle(fractions[gen() % 4]);
        const auto mode = angle.is_ideal() && gen() % 2 ? ScatteringMode::ideal : ScatteringMode::generalized;
        const Mat2 w = total_transfer(s, dw, kScale, angle, mode);
        const auto pt = reflect_transmit(w, dw);
        const auto chk = check_transfer(w);
        flux = std::max(flux, std::abs(pt.r2() + pt.t2() - 1.0));
        det = std::max(det, chk.det_error);
        pu = std::max(pu, chk.pseudo_unitarity_error);
    }
    CHECK(flux < 1e-10);
    CHECK(det < 1e-12);
    CHECK(pu < 1e-10);
}

TEST_CASE("property: transmission is reciprocal under profile reversal") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> freq(-2.0, 2.0);
    for (int c = 0; c < 30; ++c) {
        const auto p = random_profile(gen, 2.0);
        auto s = sampled(p);
        auto r = s;
        std::reverse(r.values.begin(), r.values.end());
        const double dw = freq(gen) * p.amplitude();
        const auto a = reflect_transmit(total_transfer(s, dw, kScale, MixingAngle(), ScatteringMode::ideal));
        const auto b = reflect_transmit(total_transfer(r, dw, kScale, MixingAngle(), ScatteringMode::ideal));
        REQUIRE(a.t2() == doctest::Approx(b.t2()).epsilon(1e-10));
    }
}

namespace {

double max_t2_change(const MassProfile& p, std::span<const double> freqs, std::size_t n) {
    const auto a = spectrum(sampled(p, n), freqs, kScale, MixingAngle(), ScatteringMode::ideal);
    const auto b = spectrum(sampled(p, 2 * n), freqs, kScale, MixingAngle(), ScatteringMode::ideal);
    double worst = 0.0;
    for (std::size_t i = 0; i < freqs.size(); ++i) worst = std::max(worst, std::abs(a.points[i].t2() - b.points[i].t2()));
    return worst;
}

}  // namespace

TEST_CASE("property: doubling the grid changes |T|^2 by less than 1e-6 at moderate opacity") {
    const auto freqs = FrequencySweep{}.frequencies(kScale.delta0_from_opacity(5.0));
    for (const auto& p : {MassProfile::kink_from_opacity(kScale, 5.0, 6.0),
                          MassProfile::sine_from_opacity(kScale, 5.0, 3.0)})
        CHECK(max_t2_change(p, freqs, 3000) < 1e-6);
}

TEST_CASE("property: refinement error is second order at the default opacity") {
    // At Theta = 75 the near-edge resonances are sharp enough that the 3000-cell
    // change is ~1e-4; only the convergence rate is asserted here.
    const auto p = MassProfile::kink_from_opacity(kScale, 75.0, 6.0);
    const auto freqs = FrequencySweep{}.frequencies(p.amplitude());
    const double e1 = max_t2_change(p, freqs, 3000);
    const double e2 = max_t2_change(p, freqs, 6000);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("constant slab oracles") {
    for (double theta : {0.25, 1.0, 5.0, 75.0}) {
        const auto s = sampled(MassProfile::constant_from_opacity(kScale, theta));
        const auto pt = reflect_transmit(total_transfer(s, 0.0, kScale, MixingAngle(), ScatteringMode::ideal));
        CHECK(std::abs(pt.t2() - oracle::sech2(theta)) < 1e-9);
    }
    const auto s = sampled(MassProfile::constant_from_opacity(kScale, 0.25));
    CHECK(reflect_transmit(total_transfer(s, 0.0, kScale, MixingAngle(), ScatteringMode::ideal)).t2() ==
          doctest::Approx(0.940014848806378).epsilon(1e-12));

    const double d0 = kScale.delta0_from_opacity(5.0);
    const auto slab = sampled(MassProfile::constant(kScale, d0));
    for (int i = 0; i < 20; ++i) {
        const double dw = d0 * (1.05 + 0.05 * i) * (i % 2 ? -1.0 : 1.0);
        const double t2 = reflect_transmit(total_transfer(slab, dw, kScale, MixingAngle(), ScatteringMode::ideal)).t2();
        REQUIRE(std::abs(t2 - oracle::constant_slab_t2_above_gap(dw, d0, kScale.v0, kScale.length)) < 1e-8);
    }
}

TEST_CASE("zero frequency transmission") {
    const auto kink = sampled(MassProfile::kink_from_opacity(kScale, 75.0, 6.0));
    const auto z = zero_frequency_transmission(kink, kScale, MixingAngle());
    CHECK(std::abs(z.phi) < 1e-12);
    CHECK(z.t2 == doctest::Approx(1.0).epsilon(1e-14));
    const auto pt = reflect_transmit(total_transfer(kink, 0.0, kScale, MixingAngle(), ScatteringMode::ideal));
    CHECK(std::abs(pt.t2() - 1.0) < 1e-10);

    const auto c = sampled(MassProfile::constant_from_opacity(kScale, 1.0));
    const auto zc = zero_frequency_transmission(c, kScale, MixingAngle(0.2));
    CHECK(zc.phi == doctest::Approx(1.0 / 0.9510565162951536).epsilon(1e-12));
    CHECK(zc.r2 + zc.t2 == doctest::Approx(1.0));
    const auto pc = reflect_transmit(total_transfer(c, 0.0, kScale, MixingAngle(0.2), ScatteringMode::generalized));
    CHECK(std::abs(pc.t2() - zc.t2) < 1e-10);
}

TEST_CASE("reflect_transmit rejects a singular W22") {
    CHECK_THROWS_AS(reflect_transmit(Mat2{1.0, 0.0, 0.0, 0.0}), NumericalError);
    const auto pt = reflect_transmit(Mat2::identity(), 0.5);
    CHECK(pt.t2() == 1.0);
    CHECK(pt.r2() == 0.0);
    CHECK(pt.delta_omega == 0.5);
}

TEST_CASE("deep opacity does not overflow and keeps unit determinant") {
    const auto s = sampled(MassProfile::constant_from_opacity(kScale, 75.0));
    const Mat2 w = total_transfer(s, 0.3 * s.values[0], kScale, MixingAngle(), ScatteringMode::ideal);
    const auto chk = check_transfer(w);
    CHECK(chk.det_error_relative < 1e-12);
    CHECK(reflect_transmit(w).t2() < 1e-50);
}

TEST_CASE("determinant stays at one over 1e5 cells") {
    const auto s = sampled(MassProfile::sine_from_opacity(kScale, 2.0, 5.0), 100000);
    const Mat2 w = total_transfer(s, 0.4 * s.grid.dz(), kScale, MixingAngle(0.1), ScatteringMode::generalized);
    CHECK(check_transfer(w).det_error < 1e-12);
}

TEST_CASE("frequency sweep") {
    const FrequencySweep sw;
    const auto f = sw.frequencies(4.25);
    REQUIRE(f.size() == 801);
    CHECK(f.front() == -8.5);
    CHECK(f.back() == 8.5);
    CHECK(f[400] == 0.0);
    CHECK_THROWS_AS((FrequencySweep{1.0, -1.0, 10}.validate()), ConfigError);
    CHECK_THROWS_AS((FrequencySweep{-1.0, 1.0, 0}.validate()), ConfigError);
}

TEST_CASE("spectrum, peak and gap edges") {
    const auto kink = sampled(MassProfile::kink_from_opacity(kScale, 75.0, 6.0));
    const double d0 = 4.25;
    const auto freqs = FrequencySweep{}.frequencies(d0);
    SpectrumMeta meta;
    meta.delta0 = d0;
    const auto sp = spectrum(kink, freqs, kScale, MixingAngle(), ScatteringMode::ideal, meta);
    REQUIRE(sp.points.size() == 801);
    for (std::size_t i = 0; i < freqs.size(); ++i) REQUIRE(sp.points[i].delta_omega == freqs[i]);
    CHECK(sp.invariants.max_flux_error < 1e-10);

    const auto peak = midgap_peak(sp);
    CHECK(peak.delta_omega == 0.0);
    CHECK(std::abs(peak.t2 - 1.0) < 1e-10);

    const auto edges = gap_edges(sp);
    REQUIRE(edges.lower);
    REQUIRE(edges.upper);
    CHECK(*edges.upper / d0 > 0.9);
    CHECK(*edges.upper / d0 < 1.5);
    CHECK(*edges.lower == doctest::Approx(-*edges.upper).epsilon(1e-9));

    const std::vector<double> unsorted{0.0, -1.0};
    CHECK_THROWS_AS(spectrum(kink, unsorted, kScale, MixingAngle(), ScatteringMode::ideal, meta), ConfigError);

    const std::vector<double> outside{2.0 * d0, 3.0 * d0};
    const auto far = spectrum(kink, outside, kScale, MixingAngle(), ScatteringMode::ideal, meta);
    CHECK_THROWS_AS(midgap_peak(far), DomainError);
}
