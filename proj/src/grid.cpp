#include "wmlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wmlab {

namespace {

// Trailing Chebyshev coefficients below this level are round-off and get
// amplified by repeated differentiation.
constexpr double kChopTol = 1e-15;

double poly_eval(const std::vector<double>& p, double t) {
    double s = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * t + *it;
    return s;
}

}  // namespace

RadialGrid build_grid(int n, const Dimension& dim) {
    if (n < 16) throw std::invalid_argument("build_grid: n must be >= 16, got " + std::to_string(n));
    RadialGrid g{dim, n, {}, {}, {}, {}, {}, {}};
    g.x = cgl_nodes<double>(n, 0.0, 1.0);
    g.rho.resize(n);
    for (int j = 0; j < n; ++j) g.rho[j] = std::sqrt(g.x[j]);
    g.Dx = cgl_diff_matrix<double>(g.x);
    g.Dx2 = g.Dx * g.Dx;

    // Integrand p(rho^2) rho^{d+1} has degree 2(n-1) + d + 1 in rho.
    const int q = n + (dim.d() + 1) / 2 + 2;
    GaussRule rule = gauss_legendre(q, 0.0, 1.0);
    g.quad_weights.assign(n, 0.0);
    for (int i = 0; i < q; ++i) {
        const double r = rule.nodes[i];
        const double w = rule.weights[i] * std::pow(r, dim.d() + 1);
        const auto row = cgl_interpolation_row(g.x, r * r);
        for (int j = 0; j < n; ++j) g.quad_weights[j] += w * row[j];
    }
    g.norm_rule = gauss_legendre(2 * n + dim.d() + 4, 0.0, 1.0);
    return g;
}

std::vector<std::vector<double>> chain_rule_polys(int k) {
    // a_{0,0} = 1; a_{k+1,j} = a_{k,j}' + 2 rho a_{k,j-1}
    std::vector<std::vector<double>> a{{1.0}};
    for (int step = 0; step < k; ++step) {
        std::vector<std::vector<double>> b(a.size() + 1);
        for (size_t j = 0; j < b.size(); ++j) {
            std::vector<double> p;
            if (j < a.size()) {
                for (size_t i = 1; i < a[j].size(); ++i) {
                    if (p.size() < i) p.resize(i, 0.0);
                    p[i - 1] += i * a[j][i];
                }
            }
            if (j >= 1) {
                const auto& prev = a[j - 1];
                if (p.size() < prev.size() + 1) p.resize(prev.size() + 1, 0.0);
                for (size_t i = 0; i < prev.size(); ++i) p[i + 1] += 2.0 * prev[i];
            }
            if (p.empty()) p.push_back(0.0);
            b[j] = std::move(p);
        }
        a = std::move(b);
    }
    return a;
}

Eigen::MatrixXd radial_diff_matrix(const RadialGrid& grid, int k) {
    const auto a = chain_rule_polys(k);
    const int n = grid.n;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd Dj = Eigen::MatrixXd::Identity(n, n);
    for (int j = 0; j <= k; ++j) {
        if (j > 0) Dj = grid.Dx * Dj;
        for (int i = 0; i < n; ++i) {
            const double coef = poly_eval(a[j], grid.rho[i]);
            if (coef != 0.0) out.row(i) += coef * Dj.row(i);
        }
    }
    return out;
}

std::vector<double> radial_derivative_at(const RadialGrid& grid, const Eigen::VectorXd& u, int k,
                                         const std::vector<double>& points) {
    if (u.size() != grid.n) throw std::invalid_argument("radial_derivative_at: sample count does not match grid");
    const auto a = chain_rule_polys(k);
    std::vector<double> vals(u.data(), u.data() + u.size());
    ChebSeries p = ChebSeries::from_cgl_values(0.0, 1.0, vals).chopped(kChopTol);
    std::vector<ChebSeries> derivs{p};
    for (int j = 1; j <= k; ++j) derivs.push_back(derivs.back().derivative());
    std::vector<double> out(points.size(), 0.0);
    for (size_t i = 0; i < points.size(); ++i) {
        const double r = points[i];
        double s = 0.0;
        for (int j = 0; j <= k; ++j) {
            const double coef = poly_eval(a[j], r);
            if (coef != 0.0) s += coef * derivs[j](r * r);
        }
        out[i] = s;
    }
    return out;
}

double evaluate_at(const RadialGrid& grid, const Eigen::VectorXd& u, double rho) {
    std::vector<double> vals(u.data(), u.data() + u.size());
    return cgl_interpolate(grid.x, vals, rho * rho);
}

double sobolev_seminorm(const Eigen::VectorXd& u, int k, double radius, const RadialGrid& grid) {
    if (k < 0 || k > grid.dim.m()) {
        throw std::invalid_argument("sobolev_seminorm: order " + std::to_string(k) +
                                    " outside 0.." + std::to_string(grid.dim.m()));
    }
    const auto& rule = grid.norm_rule;
    const auto der = radial_derivative_at(grid, u, k, rule.nodes);
    double s = 0.0;
    for (size_t i = 0; i < der.size(); ++i) {
        s += rule.weights[i] * der[i] * der[i] * std::pow(rule.nodes[i], grid.dim.d() + 1);
    }
    return std::pow(radius, 0.5 * (grid.dim.d() + 2) - k) * std::sqrt(s);
}

double sobolev_norm(const Eigen::VectorXd& u, int k, double radius, const RadialGrid& grid) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) {
        const double v = sobolev_seminorm(u, j, radius, grid);
        s += v * v;
    }
    return std::sqrt(s);
}

}  // namespace wmlab
