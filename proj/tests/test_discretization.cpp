#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wmlab/grid.hpp"
#include "wmlab/kernels.hpp"
#include "wmlab/profiles.hpp"
#include "wmlab/verification.hpp"

using namespace wmlab;

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    const GaussRule g = gauss_legendre(10, 0.0, 2.0);
    for (size_t i = 1; i < g.nodes.size(); ++i) CHECK(g.nodes[i] > g.nodes[i - 1]);
    for (int k = 0; k < 20; ++k) {
        double s = 0.0;
        for (size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
        CHECK(s == doctest::Approx(std::pow(2.0, k + 1) / (k + 1)).epsilon(1e-14));
    }
}

TEST_CASE("adaptive integration is relative for tiny integrands") {
    for (double scale : {1.0, 1e-30, 1e30}) {
        const Integral r = integrate([scale](double x) { return scale * std::exp(-x) * x * x; }, 0.0, 3.0);
        const double exact = scale * (2.0 - 17.0 * std::exp(-3.0));
        CHECK(r.converged);
        CHECK(std::abs(r.value - exact) <= 1e-14 * std::abs(exact));
    }
    const long double e = integrate_extended([](long double x) { return 1e-40L * std::exp(x); }, 0.0L, 1.0L);
    CHECK(std::abs(e - 1e-40L * (std::exp(1.0L) - 1)) <= 1e-17L * 1e-40L);
    CHECK(integrate([](double) { return 0.0; }, 0.0, 1.0).value == 0.0);
}

TEST_CASE("Chebyshev series and barycentric interpolation") {
    const int n = 30;
    const auto x = cgl_nodes<double>(n, -1.0, 2.0);
    std::vector<double> v;
    for (double xi : x) v.push_back(std::sin(xi) * std::exp(xi));
    const ChebSeries s = ChebSeries::from_cgl_values(-1.0, 2.0, v);
    const ChebSeries ds = s.derivative();
    for (double t : {-0.9, 0.0, 0.77, 1.9}) {
        CHECK(s(t) == doctest::Approx(std::sin(t) * std::exp(t)).epsilon(1e-13));
        CHECK(ds(t) == doctest::Approx((std::cos(t) + std::sin(t)) * std::exp(t)).epsilon(1e-11));
        CHECK(cgl_interpolate(x, v, t) == doctest::Approx(std::sin(t) * std::exp(t)).epsilon(1e-13));
        const auto row = cgl_interpolation_row(x, t);
        double r = 0.0;
        for (int j = 0; j < n; ++j) r += row[j] * v[j];
        CHECK(r == doctest::Approx(cgl_interpolate(x, v, t)).epsilon(1e-14));
    }
    CHECK(s.chopped(1e-12).coeffs().size() < s.coeffs().size());
    const auto D = cgl_diff_matrix<double>(x);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    CHECK((D * ones).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("grid construction") {
    CHECK_THROWS_AS(build_grid(15, Dimension(3)), std::invalid_argument);
    for (int d : {3, 5, 9}) {
        const Dimension dim(d);
        const RadialGrid g = build_grid(24, dim);
        CHECK(g.rho.front() == 0.0);
        CHECK(g.rho.back() == 1.0);
        for (int j = 1; j < g.n; ++j) CHECK(g.rho[j] > g.rho[j - 1]);
        double s = 0.0;
        for (double w : g.quad_weights) s += w;
        CHECK(s == doctest::Approx(1.0 / (d + 2)).epsilon(1e-12));
        // rho^{d+1} rho^4 is a polynomial of degree 2 in x
        double s4 = 0.0;
        for (int j = 0; j < g.n; ++j) s4 += g.quad_weights[j] * std::pow(g.rho[j], 4);
        CHECK(s4 == doctest::Approx(1.0 / (d + 6)).epsilon(1e-12));
        for (int k = 1; k <= dim.m(); ++k) {
            const Eigen::VectorXd c = Eigen::VectorXd::Constant(g.n, 3.0);
            CHECK((radial_diff_matrix(g, k) * c).cwiseAbs().maxCoeff() < 1e-12 * std::pow(g.n, 2 * k));
        }
    }
}

TEST_CASE("derivatives of even polynomials and of g1") {
    const Dimension d3(3);
    const RadialGrid g = build_grid(32, d3);
    const Eigen::VectorXd r2 = sample(g, [](double r) { return r * r; });
    CHECK(radial_derivative_at(g, r2, 1, {0.5})[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(radial_derivative_at(g, r2, 2, {0.3})[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(evaluate_at(g, r2, 0.7) == doctest::Approx(0.49).epsilon(1e-14));
    CHECK_THROWS(radial_derivative_at(g, Eigen::VectorXd::Zero(5), 1, {0.5}));

    const RadialGrid g64 = build_grid(64, d3);
    const GaugeMode gm = gauge_mode(d3);
    const Eigen::VectorXd u = sample(g64, [&](double r) { return gm.g1(r); });
    const Eigen::VectorXd du = radial_diff_matrix(g64, 1) * u;
    double err = 0.0;
    for (int j = 0; j < g64.n; ++j) err = std::max(err, std::abs(du[j] - gm.g1_prime(g64.rho[j])));
    CHECK(err < 1e-10);
}

TEST_CASE("chain rule polynomials") {
    // u(rho) = p(rho^2): u' = 2 rho p', u'' = 2 p' + 4 rho^2 p''
    auto eval = [](const std::vector<double>& p, double r) {
        double s = 0.0;
        for (size_t i = p.size(); i-- > 0;) s = s * r + p[i];
        return s;
    };
    const auto a1 = chain_rule_polys(1);
    const auto a2 = chain_rule_polys(2);
    REQUIRE(a1.size() == 2);
    REQUIRE(a2.size() == 3);
    for (double r : {0.0, 0.3, 1.0}) {
        CHECK(eval(a1[0], r) == 0.0);
        CHECK(eval(a1[1], r) == doctest::Approx(2 * r));
        CHECK(eval(a2[0], r) == 0.0);
        CHECK(eval(a2[1], r) == doctest::Approx(2.0));
        CHECK(eval(a2[2], r) == doctest::Approx(4 * r * r));
    }
}

TEST_CASE("odd derivatives vanish at the origin") {
    const Dimension d5(5);
    const RadialGrid g = build_grid(32, d5);
    const Eigen::VectorXd u = sample(g, [&](double r) { return f0_over_rho(r, d5); });
    for (int k : {1, 3}) CHECK(std::abs(radial_derivative_at(g, u, k, {0.0})[0]) < 1e-10);
    CHECK(std::abs(radial_derivative_at(g, u, 2, {0.0})[0]) > 1e-3);
}

TEST_CASE("seminorm values") {
    for (int d : {3, 5, 7}) {
        const Dimension dim(d);
        const RadialGrid g = build_grid(24, dim);
        CHECK(sobolev_seminorm(Eigen::VectorXd::Zero(g.n), 2, 1.0, g) == 0.0);
        const Eigen::VectorXd r2 = sample(g, [](double r) { return r * r; });
        // |rho^2|_1 = (int 4 rho^2 rho^{d+1})^{1/2}
        CHECK(sobolev_seminorm(r2, 1, 1.0, g) == doctest::Approx(std::sqrt(4.0 / (d + 4))).epsilon(1e-13));
        CHECK(sobolev_seminorm(r2, 0, 1.0, g) == doctest::Approx(std::sqrt(1.0 / (d + 6))).epsilon(1e-13));
        CHECK(sobolev_seminorm(r2, 3, 1.0, g) < 1e-10);
        // radius scaling of u(r/R)
        for (int k = 0; k <= 2; ++k) {
            const double ratio = sobolev_seminorm(r2, k, 0.5, g) / sobolev_seminorm(r2, k, 1.0, g);
            CHECK(ratio == doctest::Approx(std::pow(0.5, (d + 2) / 2.0 - k)).epsilon(1e-13));
        }
        const double n2 = sobolev_norm(r2, 1, 1.0, g);
        CHECK(n2 == doctest::Approx(std::sqrt(1.0 / (d + 6) + 4.0 / (d + 4))).epsilon(1e-13));
        CHECK_THROWS_AS(sobolev_seminorm(r2, dim.m() + 1, 1.0, g), std::invalid_argument);
        CHECK_THROWS_AS(sobolev_seminorm(r2, -1, 1.0, g), std::invalid_argument);
    }
}

TEST_CASE("seminorms converge spectrally") {
    const Dimension d3(3);
    auto f = [](double r) { return std::exp(-r * r) / (1.0 + r * r); };
    const RadialGrid ref = build_grid(80, d3);
    const double exact = sobolev_seminorm(sample(ref, f), 2, 1.0, ref);
    std::vector<double> errs;
    for (int n : {16, 24, 32}) {
        const RadialGrid g = build_grid(n, d3);
        errs.push_back(std::abs(sobolev_seminorm(sample(g, f), 2, 1.0, g) - exact));
    }
    CHECK(errs[1] < errs[0] * 1e-3);
    CHECK(errs[2] < 1e-12);
}

TEST_CASE("serial and parallel kernels agree") {
    Rng rng(5);
    for (int n : {16, 64, 130}) {
        Eigen::MatrixXd A(n, n);
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) {
            x[i] = rng.uniform(-1.0, 1.0);
            for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
        }
        Eigen::VectorXd ys(n), yp(n);
        serial::matvec(A, x, ys);
        parallel::matvec(A, x, yp);
        CHECK((ys - yp).cwiseAbs().maxCoeff() == 0.0);
        CHECK((ys - A * x).cwiseAbs().maxCoeff() < 1e-12);
    }
    const Dimension d5(5);
    const RadialGrid g = build_grid(40, d5);
    Eigen::VectorXd zeta(g.n), os(g.n), op(g.n);
    for (int j = 0; j < g.n; ++j) zeta[j] = rng.uniform(-0.5, 0.5);
    serial::nhat_grid(g.rho, zeta, d5, os);
    parallel::nhat_grid(g.rho, zeta, d5, op);
    CHECK((os - op).cwiseAbs().maxCoeff() == 0.0);
    for (int j = 0; j < g.n; ++j) CHECK(os[j] == nonlinearity_Nhat(g.rho[j], zeta[j], d5));

    std::vector<double> out_s(50), out_p(50);
    for_each_index(Execution::serial, 50, [&](std::size_t i) { out_s[i] = std::sqrt(double(i)); });
    for_each_index(Execution::parallel, 50, [&](std::size_t i) { out_p[i] = std::sqrt(double(i)); });
    CHECK(out_s == out_p);
}

TEST_CASE("random number mapping is fixed") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    std::mt19937_64 e(42);
    CHECK(Rng(42).uniform() == static_cast<double>(e() >> 11) / 9007199254740992.0);
}
