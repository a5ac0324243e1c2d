#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pwlb/quadrature.hpp"
#include "pwlb/rng.hpp"

using namespace pwlb;

TEST_CASE("exact product integrals of sawtooth dilations") {
    CHECK(integrate_pwl_product({Family::C_saw, 1}, {Family::C_saw, 1}) == make_rational(1, 3));
    CHECK(integrate_pwl_product({Family::S_saw, 1}, {Family::S_saw, 3}) == make_rational(-1, 27));
    CHECK(integrate_pwl_product({Family::C_saw, 2}, {Family::C_saw, 3}) == Rational(0));
    CHECK(integrate_pwl_product({Family::Hat, 1}, {Family::Hat, 1}) == make_rational(1, 3));
    // mixed families are orthogonal regardless of dilation
    CHECK(integrate_pwl_product({Family::C_saw, 4}, {Family::S_saw, 4}) == Rational(0));
}

TEST_CASE("product integral guard") {
    CHECK_THROWS_AS(integrate_pwl_product({Family::C_saw, (1LL << 14) + 1}, {Family::C_saw, 1}),
                    std::invalid_argument);
}

TEST_CASE("Gauss-Legendre is exact through degree 31") {
    auto f = [](double t) { return 31.0 * std::pow(t, 30.0) - 0.5; };
    double got = gl_integrate(f, {}, 1);
    CHECK(got == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hints split kinked integrands exactly") {
    auto f = [](double t) { return std::fabs(2.0 * t - 1.0); };
    std::vector<double> hints{0.5};
    CHECK(gl_integrate(f, hints, 1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("closed-form trig integrals match composite quadrature") {
    SplitMix64 rng{101};
    for (int trial = 0; trial < 200; ++trial) {
        auto pick = [&](std::uint64_t c, long long m) {
            return static_cast<long long>(rng.at(c + static_cast<std::uint64_t>(trial) * 7) %
                                          static_cast<std::uint64_t>(m));
        };
        Family fam = static_cast<Family>(pick(0, 3));
        long long k = 1 + pick(1, 40);
        long long freq = 1 + pick(2, 40);
        TrigFactor kind = static_cast<TrigFactor>(pick(3, 3));
        Dilation d{fam, k};
        double closed = integrate_pwl_trig(d, freq, kind);
        auto f = [&](double t) {
            double trig;
            switch (kind) {
                case TrigFactor::sin_jpi: trig = std::sin(std::numbers::pi * freq * t); break;
                case TrigFactor::cos_2pik: trig = std::cos(2.0 * std::numbers::pi * freq * t); break;
                default: trig = std::sin(2.0 * std::numbers::pi * freq * t); break;
            }
            return d.eval(t) * trig;
        };
        auto kk = d.kinks_unit_d();
        std::vector<double> hints(kk.begin() + 1, kk.end() - 1);
        double numeric = gl_integrate(f, hints, static_cast<int>(std::max<long long>(4, freq / k + 1)));
        CHECK(closed == doctest::Approx(numeric).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("known trig moments") {
    double pi2 = std::numbers::pi * std::numbers::pi;
    // int C(t) cos(2 pi t) dt = 4/pi^2
    CHECK(integrate_pwl_trig({Family::C_saw, 1}, 1, TrigFactor::cos_2pik) ==
          doctest::Approx(4.0 / pi2).epsilon(1e-15));
    // <Hat_1, sqrt2 sin(pi t)> = 4 sqrt2/pi^2, the leading hat coefficient
    CHECK(std::numbers::sqrt2 * integrate_pwl_trig({Family::Hat, 1}, 1, TrigFactor::sin_jpi) ==
          doctest::Approx(4.0 * std::numbers::sqrt2 / pi2).epsilon(1e-15));
    // odd symmetry kills the sine moment of the even sawtooth
    CHECK(integrate_pwl_trig({Family::C_saw, 3}, 3, TrigFactor::sin_2pik) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("Lq norms of reference functions") {
    auto e1 = [](double t) { return std::numbers::sqrt2 * std::sin(std::numbers::pi * t); };
    Estimate n2 = lq_norm(e1, 2.0, {}, 8);
    CHECK(n2.value == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(n2.error <= 1e-12);

    Estimate n3 = lq_norm([](double) { return -1.0; }, 3.0, {}, 2);
    CHECK(n3.value == doctest::Approx(1.0).epsilon(1e-14));

    Dilation c1{Family::C_saw, 1};
    std::vector<double> hints{0.5};
    Estimate nc = lq_norm([&](double t) { return c1.eval(t); }, 2.0, hints, 4);
    CHECK(nc.value == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));

    CHECK_THROWS_AS(lq_norm(e1, 1.0, {}, 4), std::invalid_argument);
}

TEST_CASE("multivariate Lq via tensor Gauss-Legendre") {
    auto f = [](std::span<const double> x) {
        return 2.0 * std::sin(std::numbers::pi * x[0]) * std::sin(std::numbers::pi * x[1]);
    };
    Estimate n = lq_norm_multi(f, 2.0, 2, MultiMode::tensor_GL, {}, 8);
    CHECK(n.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lattice rule agrees with tensor quadrature on smooth integrands") {
    auto f = [](std::span<const double> x) { return x[0] + x[1]; };
    Estimate ref = lq_norm_multi(f, 2.0, 2, MultiMode::tensor_GL, {}, 8);
    Estimate qmc = lq_norm_multi(f, 2.0, 2, MultiMode::qmc, {}, 16, 42);
    CHECK(ref.value == doctest::Approx(std::sqrt(7.0 / 6.0)).epsilon(1e-12));
    CHECK(std::fabs(qmc.value - ref.value) <= 1e-5);
    // deterministic given the seed
    Estimate qmc2 = lq_norm_multi(f, 2.0, 2, MultiMode::qmc, {}, 16, 42);
    CHECK(qmc.value == qmc2.value);
    CHECK(qmc.error == qmc2.error);
}

TEST_CASE("Monte-Carlo inner product") {
    auto e1 = [](std::span<const double> x) {
        return std::numbers::sqrt2 * std::sin(std::numbers::pi * x[0]);
    };
    Estimate est = mc_inner_product(e1, e1, 1, 50000, 7);
    CHECK(std::fabs(est.value - 1.0) <= 5.0 * est.error);
    CHECK(est.error > 0.0);
    CHECK(est.error < 0.05);

    Estimate rerun = mc_inner_product(e1, e1, 1, 50000, 7);
    CHECK(est.value == rerun.value);

    CHECK_THROWS_AS(mc_inner_product(e1, e1, 1, 10, 7), std::invalid_argument);
}

TEST_CASE("tensor integrals in up to three dimensions") {
    auto fxy = [](std::span<const double> x) { return x[0] * x[1]; };
    CHECK(gl_integrate_multi(fxy, 2, {}, 2) == doctest::Approx(0.25).epsilon(1e-14));
    auto fxyz = [](std::span<const double> x) { return x[0] * x[1] * x[2]; };
    CHECK(gl_integrate_multi(fxyz, 3, {}, 2) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK_THROWS_AS(gl_integrate_multi(fxyz, 4, {}, 2), std::invalid_argument);
}
