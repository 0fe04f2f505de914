#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wmlab/chebyshev.hpp"
#include "wmlab/dimension.hpp"
#include "wmlab/quadrature.hpp"

namespace wmlab {

// Radial functions on [0,1] are stored as samples of a polynomial p(x) in
// x = rho^2 at Chebyshev-Gauss-Lobatto points of [0,1] in x, so every
// represented function is even in rho.
struct RadialGrid {
    Dimension dim;
    int n = 0;
    std::vector<double> x;
    std::vector<double> rho;
    Eigen::MatrixXd Dx;   // d/dx
    Eigen::MatrixXd Dx2;  // d^2/dx^2
    // Weights for the measure rho^{d+1} d rho, exact for p of degree <= n-1.
    std::vector<double> quad_weights;
    // Gauss rule in rho used for Sobolev seminorms.
    GaussRule norm_rule;
};

// Throws std::invalid_argument for n < 16.
RadialGrid build_grid(int n, const Dimension& dim);

// Matrix of d^k/d rho^k acting on grid samples.
Eigen::MatrixXd radial_diff_matrix(const RadialGrid& grid, int k);

// Coefficients a_{k,j}(rho), j = 0..k, with u^{(k)}(rho) = sum_j a_{k,j}(rho) p^{(j)}(rho^2).
// Each entry is a polynomial in rho, coefficients in ascending powers.
std::vector<std::vector<double>> chain_rule_polys(int k);

// u^{(k)} evaluated at arbitrary points of [0,1] through the Chebyshev expansion.
std::vector<double> radial_derivative_at(const RadialGrid& grid, const Eigen::VectorXd& u, int k,
                                         const std::vector<double>& points);

// Interpolated value at rho in [0,1].
double evaluate_at(const RadialGrid& grid, const Eigen::VectorXd& u, double rho);

// Homogeneous radial seminorm on the (d+2)-ball of the given radius,
//   |u|_k = R^{(d+2)/2 - k} ( int_0^1 |u^{(k)}(rho)|^2 rho^{d+1} d rho )^{1/2},
// for u sampled on the unit grid and read as u(r/R). The constant |S^{d+1}| is omitted.
// Throws std::invalid_argument for k < 0 or k > m.
double sobolev_seminorm(const Eigen::VectorXd& u, int k, double radius, const RadialGrid& grid);

// sqrt(sum_{j<=k} |u|_j^2).
double sobolev_norm(const Eigen::VectorXd& u, int k, double radius, const RadialGrid& grid);

// Grid samples of a callable f(rho).
template <class F>
Eigen::VectorXd sample(const RadialGrid& grid, F&& f) {
    Eigen::VectorXd v(grid.n);
    for (int j = 0; j < grid.n; ++j) v[j] = f(grid.rho[j]);
    return v;
}

}  // namespace wmlab
