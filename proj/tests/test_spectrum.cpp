#include <cmath>

#include "doctest.h"
#include "wmlab/profiles.hpp"
#include "wmlab/spectrum.hpp"
#include "wmlab/verification.hpp"

using namespace wmlab;

namespace {

// (v, v', v'') of a non-logarithmic series at point zero, summed directly.
std::array<cd, 3> sum_series(const FrobeniusSeries& s, double rho) {
    cd v = 0.0, dv = 0.0, ddv = 0.0;
    for (size_t k = 0; k < s.coeffs.size(); ++k) {
        const cd p = s.index + double(k);
        v += s.coeffs[k] * std::pow(rho, p);
        dv += s.coeffs[k] * p * std::pow(rho, p - 1.0);
        ddv += s.coeffs[k] * p * (p - 1.0) * std::pow(rho, p - 2.0);
    }
    return {v, dv, ddv};
}

}  // namespace

TEST_CASE("Frobenius indices") {
    const auto [a, b] = indices(ExpansionPoint::zero, cd(0.3, 2.0), Dimension(5));
    CHECK(a == cd(1.0));
    CHECK(b == cd(-4.0));
    const auto [c, e] = indices(ExpansionPoint::one, cd(1.0), Dimension(3));
    CHECK(c == cd(0.0));
    CHECK(e == cd(0.0));
    const auto [f, g] = indices(ExpansionPoint::one, cd(2.0), Dimension(7));
    CHECK(f == cd(0.0));
    CHECK(g == cd(1.0));
    for (int d : {3, 5, 7}) {
        for (auto pt : {ExpansionPoint::zero, ExpansionPoint::one}) {
            const cd lambda(0.7, -1.3);
            const LocalEquation le = local_equation(pt, lambda, Dimension(d));
            const auto [s1, s2] = indices(pt, lambda, Dimension(d));
            CHECK(std::abs(le.indicial(s1)) < 1e-12);
            CHECK(std::abs(le.indicial(s2)) < 1e-12);
        }
    }
}

TEST_CASE("Frobenius series solve the spectral equation") {
    CHECK_THROWS_AS(frobenius_series(ExpansionPoint::zero, Branch::admissible, 1.0, Dimension(3), 5),
                    std::invalid_argument);
    for (int d : {3, 5, 7}) {
        const Dimension dim(d);
        const cd lambda(0.4, 0.9);
        const FrobeniusSeries s = frobenius_series(ExpansionPoint::zero, Branch::admissible, lambda, dim, 60);
        CHECK(s.coeffs[0] == cd(1.0));
        const auto [v, dv, ddv] = sum_series(s, 0.3);
        CHECK(std::abs(ode_residual(0.3, lambda, dim, v, dv, ddv)) < 1e-11 * std::abs(v) * 100);
        const auto [ev, edv] = s.evaluate(0.3);
        CHECK(std::abs(ev - v) < 1e-14);
        CHECK(std::abs(edv - dv) < 1e-13);
    }
}

TEST_CASE("truncated series residual has the expected order") {
    const Dimension dim(5);
    const cd lambda(0.5, 0.0);
    const int order = 12;
    const FrobeniusSeries s = frobenius_series(ExpansionPoint::zero, Branch::admissible, lambda, dim, order);
    auto res = [&](double rho) {
        const auto [v, dv, ddv] = sum_series(s, rho);
        return std::abs(ode_residual(rho, lambda, dim, v, dv, ddv));
    };
    const double slope = std::log(res(0.32) / res(0.16)) / std::log(2.0);
    // the last retained coefficient leaves a defect of order rho^{order + s - 2}
    CHECK(slope == doctest::Approx(double(order) - 1.0).epsilon(0.1));
}

TEST_CASE("gauge eigenfunction from the admissible branch") {
    const Dimension d3(3);
    const FrobeniusSeries s = frobenius_series(ExpansionPoint::zero, Branch::admissible, 1.0, d3, 60);
    for (double r : {0.1, 0.3, 0.5}) {
        CHECK(std::abs(s.evaluate(r).first - cd(r / (r * r + 1.0))) < 1e-13);
    }
    const FrobeniusSeries sing = frobenius_series(ExpansionPoint::zero, Branch::singular, 0.5, Dimension(5), 20);
    CHECK(sing.index == cd(-4.0));
    CHECK(sing.coeffs[0] == cd(1.0));
}

TEST_CASE("normalized series at one") {
    const Dimension d5(5);
    CHECK(normalization_order(d5, 0.0) >= 1);
    const int J = normalization_order(d5, -1.0);
    // sigma = 2 - lambda hits the integer 1 at lambda = 1 and stays finite after normalization
    const auto c = normalized_series_at_one(1.0, d5, 30, J);
    for (const cd& x : c) CHECK(std::isfinite(std::abs(x)));
    CHECK_THROWS_AS(normalized_series_at_one(cd(2.0 - (J + 1)), d5, 30, J), ResonanceError);
}

TEST_CASE("connection function vanishes at the gauge eigenvalue") {
    for (int d : {3, 5, 7, 9}) {
        CHECK(std::abs(connection(1.0, Dimension(d)).normalized) < 1e-9);
    }
    CHECK(std::abs(connection(0.5, Dimension(3)).normalized) > 1e-4);
}

TEST_CASE("connection value is independent of the matching point") {
    for (int d : {3, 7}) {
        for (cd lambda : {cd(0.5, 0.0), cd(2.0, 3.0), cd(0.1, -6.0)}) {
            ConnectionOptions a, b;
            a.matching_point = 0.4;
            b.matching_point = 0.6;
            const cd wa = connection(lambda, Dimension(d), a).normalized;
            const cd wb = connection(lambda, Dimension(d), b).normalized;
            CHECK(std::abs(wa - wb) < 1e-8 * std::abs(wa));
        }
    }
}

TEST_CASE("connection function satisfies Cauchy-Riemann") {
    Rng rng(12);
    const Dimension d3(3);
    const double h = 1e-4;
    for (int i = 0; i < 20; ++i) {
        const cd z(rng.uniform(0.0, 8.0), rng.uniform(-8.0, 8.0));
        auto W = [&](cd l) { return connection(l, d3).normalized; };
        const cd wx = (W(z + h) - W(z - h)) / (2 * h);
        const cd wy = (W(z + cd(0, h)) - W(z - cd(0, h))) / (2 * h);
        CHECK(std::abs(wy - cd(0, 1) * wx) < 1e-6 * std::max(1.0, std::abs(wx)));
    }
}

TEST_CASE("serial and parallel connection batches agree") {
    const std::vector<cd> ls{{0.5, 0.0}, {1.0, 1.0}, {3.0, -2.0}, {0.0, 7.0}};
    const Dimension d5(5);
    const auto s = connection_batch(ls, d5, {}, Execution::serial);
    const auto p = connection_batch(ls, d5, {}, Execution::parallel);
    REQUIRE(s.size() == ls.size());
    for (size_t i = 0; i < ls.size(); ++i) {
        CHECK(s[i] == p[i]);
        CHECK(s[i] == connection(ls[i], d5).normalized);
    }
}

TEST_CASE("shooting eigenfunction matches the gauge mode") {
    for (int d : {3, 5, 7}) {
        const Dimension dim(d);
        std::vector<double> rho;
        for (int i = 1; i <= 19; ++i) rho.push_back(0.05 * i);
        const auto v = shooting_solution(1.0, dim, rho);
        const GaugeMode g = gauge_mode(dim);
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < rho.size(); ++i) {
            const double e = rho[i] * g.g1(rho[i]);
            num += v[i].real() * e;
            den += e * e;
        }
        const double scale = num / den;
        double err = 0.0, mx = 0.0;
        for (size_t i = 0; i < rho.size(); ++i) {
            const double e = scale * rho[i] * g.g1(rho[i]);
            err = std::max(err, std::abs(v[i] - e));
            mx = std::max(mx, std::abs(e));
        }
        CHECK(err < 1e-6 * mx);
    }
}

TEST_CASE("search region parsing") {
    const SearchRegion r = parse_region("re>=0,abs<=15");
    CHECK(r.re_min == 0.0);
    CHECK(r.radius == 15.0);
    CHECK(r.excluded.empty());
    const SearchRegion e = parse_region("re>=-0.2,abs<=2,exclude=1+0i:0.3");
    CHECK(e.re_min == -0.2);
    REQUIRE(e.excluded.size() == 1);
    CHECK(e.excluded[0].center == cd(1.0, 0.0));
    CHECK(e.excluded[0].radius == 0.3);
    const SearchRegion back = parse_region(to_string(e));
    CHECK(back.re_min == e.re_min);
    CHECK(back.radius == e.radius);
    CHECK(back.excluded.size() == 1);
    for (const char* bad : {"", "re>=0", "abs<=15", "re>=x,abs<=2", "re>=0,abs<=-1", "re>=0,abs<=2,foo=1",
                            "re>=3,abs<=2"}) {
        CHECK_THROWS_AS(parse_region(bad), std::invalid_argument);
    }
}

TEST_CASE("argument principle away from the gauge eigenvalue") {
    const SearchRegion r = parse_region("re>=-0.2,abs<=2,exclude=1+0i:0.3");
    SearchOptions opt;
    opt.boundary_points = 400;
    const SpectrumReport rep = find_eigenvalues(r, Dimension(3), opt);
    CHECK(rep.winding_count == 0);
    CHECK(rep.eigenvalues.empty());
    CHECK(rep.consistent);
}

TEST_CASE("eigenvalue search in the right half plane") {
    const SpectrumReport rep = find_eigenvalues(parse_region("re>=0,abs<=15"), Dimension(3));
    CHECK(rep.consistent);
    CHECK(rep.winding_count == 1);
    REQUIRE(rep.eigenvalues.size() == 1);
    CHECK(std::abs(rep.eigenvalues[0].value - 1.0) < 1e-8);
    CHECK(rep.boundary_min > 0.0);
    CHECK(!rep.boundary_samples.empty());
}

TEST_CASE("collocation spectrum") {
    const auto ev = collocation_spectrum(Dimension(3), 64);
    double best = 1.0;
    for (const auto& e : ev) best = std::min(best, std::abs(e.value - 1.0));
    CHECK(best < 1e-6);
    for (int d : {3, 5, 7}) {
        const Dimension dim(d);
        const auto spec = collocation_spectrum(dim, 32);
        int unstable = 0;
        for (const auto& e : spec) {
            if (!e.converged) continue;
            if (e.value.real() >= 0.0) {
                ++unstable;
                CHECK(std::abs(e.value - 1.0) < 1e-6);
            } else if (std::abs(e.value) < 15.0 && e.value.real() > -0.9) {
                // grid-converged stable eigenvalues are roots of the connection function too
                CHECK(std::abs(connection(e.value, dim).normalized) < 1e-5 * std::abs(connection(e.value + 0.5, dim).normalized));
            }
        }
        CHECK(unstable == 1);
        const CollocationGaugeCheck gc = collocation_gauge_check(dim, 32);
        CHECK(std::abs(gc.eigenvalue - 1.0) < 1e-6);
        CHECK(gc.eigenvector_error < 1e-6);
    }
}

TEST_CASE("second kernel branch") {
    const Dimension d3(3);
    std::vector<double> rho;
    for (double r = 1e-3; r < 2e-2; r *= 1.3) rho.push_back(r);
    const KernelSecondSolution k = kernel_second_solution(d3, rho);
    CHECK(k.leading_power == doctest::Approx(-3.0).epsilon(0.1 / 3));
    CHECK(kernel_second_solution(Dimension(5), rho).leading_power == doctest::Approx(-5.0).epsilon(0.1 / 5));

    // Wronskian with g1 equals (1 - rho^2)^{(d-5)/2} rho^{-d-1}
    for (int d : {3, 5, 7}) {
        const Dimension dim(d);
        const GaugeMode g = gauge_mode(dim);
        const double a = default_kernel_anchor(dim);
        for (double r : {0.2, 0.4, 0.6, 0.8}) {
            const double h = 1e-4;
            auto u = [&](double x) { return kernel_second_branch(x, dim, a); };
            const double du = (-u(r + 2 * h) + 8 * u(r + h) - 8 * u(r - h) + u(r - 2 * h)) / (12 * h);
            const double w = g.g1(r) * du - g.g1_prime(r) * u(r);
            const double expected = std::pow(1 - r * r, (d - 5) / 2.0) * std::pow(r, -d - 1);
            CHECK(w == doctest::Approx(expected).epsilon(1e-8));
        }
    }
}
