#include "wmlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace wmlab {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 2.0);
    const double pi = std::acos(-1.0);
    if (n > 1) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                auto [p, dp] = legendre(n, x);
                double dx = p / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double dp = legendre(n, x).second;
            double w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.nodes[i] = -x;
            rule.nodes[n - 1 - i] = x;
            rule.weights[i] = w;
            rule.weights[n - 1 - i] = w;
        }
        if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    }
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

namespace {

// Magnitude of f on [a, b] from a few interior samples; 1 when they all vanish.
template <class Real, class F>
Real sample_scale(const F& f, Real a, Real b) {
    Real scale = 0;
    for (int k = 0; k < 9; ++k) {
        const Real v = std::abs(f(a + (b - a) * (k + Real(0.5)) / 9));
        if (std::isfinite(static_cast<double>(v))) scale = std::max(scale, v);
    }
    return scale > 0 ? scale : Real(1);
}

}  // namespace

// The Kronrod error estimate has an absolute floor, so the integrand is mapped
// to [0, 1] and normalized to unit size before integrating.
Integral integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                   unsigned max_depth) {
    Integral out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    const double len = b - a;
    const double scale = sample_scale(f, a, b);
    auto g = [&](double v) { return f(a + len * v) / scale; };
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, max_depth, rel_tol,
                                                                                    &err, &l1);
    const double factor = std::abs(len) * scale;
    out.value = v * len * scale;
    out.error = err * factor;
    out.converged = std::isfinite(out.value) && err <= 100.0 * rel_tol * std::max(l1, 1e-300);
    return out;
}

long double integrate_extended(const std::function<long double(long double)>& f, long double a, long double b,
                               long double rel_tol, unsigned max_depth) {
    if (a == b) return 0.0L;
    const long double len = b - a;
    const long double scale = sample_scale(f, a, b);
    auto g = [&](long double v) { return f(a + len * v) / scale; };
    return boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(g, 0.0L, 1.0L, max_depth, rel_tol) *
           len * scale;
}

}  // namespace wmlab
