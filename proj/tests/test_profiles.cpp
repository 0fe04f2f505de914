#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wmlab/profiles.hpp"
#include "wmlab/verification.hpp"

using namespace wmlab;

namespace {

using LD = long double;

LD psi_ld(LD t, LD r, LD T, LD c) { return 2 * std::atan(r / (std::sqrt(c) * (T - t))); }

// Residual of the reduced equation from sixth-order central differences in long double.
LD fd_residual(LD t, LD r, LD T, int d) {
    const LD c = d - 2;
    const LD h = 3e-3L * std::min(T - t, r);
    auto psi = [&](LD tt, LD rr) { return psi_ld(tt, rr, T, c); };
    auto d2 = [&](auto f) {
        return (2 * f(-3) - 27 * f(-2) + 270 * f(-1) - 490 * f(0) + 270 * f(1) - 27 * f(2) + 2 * f(3)) /
               (180 * h * h);
    };
    auto d1 = [&](auto f) { return (-f(-3) + 9 * f(-2) - 45 * f(-1) + 45 * f(1) - 9 * f(2) + f(3)) / (60 * h); };
    const LD ptt = d2([&](int k) { return psi(t + k * h, r); });
    const LD prr = d2([&](int k) { return psi(t, r + k * h); });
    const LD pr = d1([&](int k) { return psi(t, r + k * h); });
    const LD p = psi(t, r);
    return ptt - prr - (d - 1) / r * pr + LD(d - 1) / 2 * std::sin(2 * p) / (r * r);
}

}  // namespace

TEST_CASE("dimension rejects even and small d") {
    CHECK_THROWS_AS(Dimension(2), std::invalid_argument);
    CHECK_THROWS_AS(Dimension(4), std::invalid_argument);
    CHECK_THROWS_AS(Dimension(1), std::invalid_argument);
    CHECK(Dimension(7).m() == 5);
    CHECK(Dimension(3).c() == 1.0);
}

TEST_CASE("f0 values") {
    const Dimension d3(3);
    CHECK(f0(0.0, d3) == 0.0);
    CHECK(f0(1.0, d3) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    for (int d : {5, 7, 9, 11}) {
        const Dimension dim(d);
        CHECK(f0(dim.sqrt_c(), dim) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    }
}

TEST_CASE("f0 is strictly increasing") {
    Rng rng(7);
    for (int d : {3, 5, 7, 9}) {
        const Dimension dim(d);
        for (int i = 0; i < 200; ++i) {
            const double a = rng.uniform(0.0, 10.0);
            const double b = a + rng.uniform(1e-6, 1.0);
            CHECK(f0(a, dim) < f0(b, dim));
        }
    }
}

TEST_CASE("f0 over rho at the origin and across the series switch") {
    CHECK(f0_over_rho(0.0, Dimension(3)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(f0_over_rho(0.0, Dimension(11)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    const Dimension d3(3);
    CHECK(std::abs(f0_over_rho(0.5, d3) - f0(0.5, d3) / 0.5) < 1e-14);
    for (int d : {3, 5, 9}) {
        const Dimension dim(d);
        const double below = f0_over_rho(std::nextafter(kSmallRho, 0.0), dim);
        const double direct = 2.0 * std::atan(kSmallRho / dim.sqrt_c()) / kSmallRho;
        CHECK(std::abs(below - direct) <= 1e-14 * std::abs(direct));
    }
}

TEST_CASE("f0 derivatives match differences") {
    for (int d : {3, 7}) {
        const Dimension dim(d);
        for (double r : {0.1, 0.5, 0.9}) {
            const double h = 1e-5;
            CHECK(f0_prime(r, dim) == doctest::Approx((f0(r + h, dim) - f0(r - h, dim)) / (2 * h)).epsilon(1e-9));
            CHECK(f0_second(r, dim) ==
                  doctest::Approx((f0_prime(r + h, dim) - f0_prime(r - h, dim)) / (2 * h)).epsilon(1e-8));
            CHECK(f0_third(r, dim) ==
                  doctest::Approx((f0_second(r + h, dim) - f0_second(r - h, dim)) / (2 * h)).epsilon(1e-7));
        }
    }
}

TEST_CASE("psiT examples") {
    const Dimension d3(3);
    const auto [p, pt] = psiT(0.0, 0.0, 1.0, d3);
    CHECK(p == 0.0);
    CHECK(pt == 0.0);
    CHECK(psiT(0.25, 0.75, 1.0, d3).first == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK_THROWS_AS(psiT(1.0, 0.1, 1.0, d3), std::domain_error);
    CHECK_THROWS_AS(psiT(1.5, 0.1, 1.0, d3), std::domain_error);
}

TEST_CASE("profile residual agrees with a finite-difference oracle") {
    Rng rng(11);
    for (int d : {3, 5, 7, 9}) {
        const Dimension dim(d);
        for (int i = 0; i < 50; ++i) {
            const double T = 1.0;
            const double t = rng.uniform(0.0, 0.9);
            const double r = (T - t) * rng.uniform(1e-2, 1.0);
            const double closed = profile_residual(t, r, T, dim);
            const double scale = std::min(T - t, r);
            CHECK(std::abs(closed) < 1e-10);
            CHECK(std::abs(double(fd_residual(t, r, T, d))) * scale * scale < 1e-8);
        }
    }
}

TEST_CASE("potential V") {
    CHECK(potential_V(0.0, Dimension(3)) == doctest::Approx(-16.0).epsilon(1e-15));
    CHECK(potential_V(1.0, Dimension(3)) == doctest::Approx(-4.0).epsilon(1e-15));
    for (int d : {3, 5, 7, 9}) {
        const Dimension dim(d);
        for (double r = 1e-3; r <= 1.0; r += 0.0137) {
            const double trig = 2.0 * std::cos(2.0 * f0(r, dim)) - 2.0;
            CHECK(std::abs(potential_V(r, dim) * r * r - trig) < 1e-12);
        }
    }
}

TEST_CASE("potential Vhat") {
    CHECK(potential_Vhat(1.0, Dimension(3)) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(potential_Vhat(1.0, Dimension(5)) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK_THROWS_AS(potential_Vhat(0.0, Dimension(3)), std::domain_error);
    for (int d : {3, 5, 7, 9}) {
        CHECK(1e-8 * potential_Vhat(1e-4, Dimension(d)) == doctest::Approx(2.0).epsilon(1e-6));
    }
}

TEST_CASE("eta and derivatives") {
    CHECK(eta(0.0) == 0.0);
    CHECK(eta_deriv(0.0, 1) == 0.0);
    CHECK(eta_deriv(0.0, 2) == 0.0);
    CHECK(eta_deriv(0.0, 3) == doctest::Approx(-8.0));
    CHECK(eta(std::numbers::pi / 4) == doctest::Approx(1.0 - std::numbers::pi / 2).epsilon(1e-15));
    CHECK(eta_deriv(0.3, 0) == eta(0.3));
}

TEST_CASE("Nhat examples") {
    const Dimension d3(3), d5(5);
    for (double r : {0.0, 0.005, 0.3, 1.0}) CHECK(nonlinearity_Nhat(r, 0.0, d3) == 0.0);
    const double closed = nonlinearity_Nhat_closed(0.5, 0.2, d3);
    const double integral = nonlinearity_Nhat_integral(0.5, 0.2, d3);
    CHECK(std::abs(closed - integral) < 1e-9);

    const double rho = 0.7, zeta = 0.1;
    const double f = f0(rho, d5), s = rho * zeta;
    const double direct = (std::sin(2 * (f + s)) - 2 * (f + s)) - (std::sin(2 * f) - 2 * f) - (2 * std::cos(2 * f) - 2) * s;
    CHECK(std::abs(taylor_remainder_N(f, s) - direct) < 1e-13);
    CHECK(nonlinearity_Nhat(rho, zeta, d5) == doctest::Approx(-2.0 * direct / (rho * rho * rho)).epsilon(1e-11));
}

TEST_CASE("Nhat branches agree on a lattice") {
    for (int d : {3, 5, 9}) {
        const Dimension dim(d);
        for (double rho : {0.01, 0.02, 0.1, 0.4, 0.8, 1.0}) {
            for (double zeta = -1.0; zeta <= 1.0; zeta += 0.25) {
                const double a = nonlinearity_Nhat_closed(rho, zeta, dim);
                const double b = nonlinearity_Nhat_integral(rho, zeta, dim);
                CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
            }
        }
    }
}

TEST_CASE("M is the zeta derivative of Nhat") {
    const Dimension d3(3);
    for (double r : {0.0, 0.5, 1.0}) CHECK(nonlinearity_M(r, 0.0, d3) == 0.0);
    const double h = 1e-5;
    const double fd = (nonlinearity_Nhat(0.5, 0.2 + h, d3) - nonlinearity_Nhat(0.5, 0.2 - h, d3)) / (2 * h);
    CHECK(std::abs(nonlinearity_M(0.5, 0.2, d3) - fd) < 1e-7);
    for (int d : {3, 5}) {
        const Dimension dim(d);
        for (double rho = 0.0; rho <= 1.0; rho += 0.125) {
            for (double zeta = 0.0; zeta <= 1.0; zeta += 0.25) {
                const double diff =
                    (nonlinearity_Nhat(rho, zeta + h, dim) - nonlinearity_Nhat(rho, zeta - h, dim)) / (2 * h);
                CHECK(std::abs(nonlinearity_M(rho, zeta, dim) - diff) < 1e-6);
            }
        }
    }
    const Dimension d5(5);
    const double at0 = nonlinearity_M(0.0, 0.3, d5);
    CHECK(std::isfinite(at0));
    CHECK(std::abs(at0 - nonlinearity_M(1e-6, 0.3, d5)) < 1e-8);
}

TEST_CASE("gauge mode") {
    const Dimension d3(3);
    const GaugeMode g = gauge_mode(d3);
    CHECK(g.g1(0.0) == 1.0);
    CHECK(g.g2(0.0) == 2.0);
    for (int d : {3, 5, 7, 9}) {
        const Dimension dim(d);
        const GaugeMode gm = gauge_mode(dim);
        const double c = dim.c();
        for (int i = 0; i < 100; ++i) {
            const double r = i / 99.0;
            CHECK(std::abs(gm.g2(r) - (r * gm.g1_prime(r) + 2.0 * gm.g1(r))) < 1e-14);
        }
        // second equation of the eigen-system with derivatives written out by hand
        for (int i = 1; i < 100; ++i) {
            const double r = i / 100.0;
            const double q = r * r + c;
            const double u = 1.0 / q, up = -2.0 * r / (q * q), upp = (6.0 * r * r - 2.0 * c) / (q * q * q);
            const double res = (1 - r * r) * upp + ((d + 1) / r - 6 * r) * up - 6 * u -
                               0.5 * (d - 1) * potential_V(r, dim) * u;
            CHECK(std::abs(res) < 1e-10);
            CHECK(std::abs(gm.g1_prime(r) - up) < 1e-15);
            CHECK(std::abs(gm.g1_second(r) - upp) < 1e-14);
        }
    }
}
