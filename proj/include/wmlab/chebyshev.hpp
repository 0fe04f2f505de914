#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace wmlab {

template <class Real>
using MatrixX = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using VectorX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Chebyshev-Gauss-Lobatto points on [a, b] in ascending order.
template <class Real>
std::vector<Real> cgl_nodes(int n, Real a, Real b) {
    std::vector<Real> x(n);
    const Real pi = std::acos(Real(-1));
    for (int j = 0; j < n; ++j) {
        Real s = std::sin(pi * Real(j) / Real(2 * (n - 1)));
        x[j] = a + (b - a) * s * s;
    }
    return x;
}

template <class Real>
std::vector<Real> cgl_barycentric_weights(int n) {
    std::vector<Real> w(n);
    for (int j = 0; j < n; ++j) w[j] = (j % 2 == 0) ? Real(1) : Real(-1);
    w[0] /= 2;
    w[n - 1] /= 2;
    return w;
}

// First-derivative collocation matrix on CGL nodes.
template <class Real>
MatrixX<Real> cgl_diff_matrix(const std::vector<Real>& x) {
    const int n = static_cast<int>(x.size());
    const auto w = cgl_barycentric_weights<Real>(n);
    MatrixX<Real> D = MatrixX<Real>::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        Real diag = 0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            D(i, j) = (w[j] / w[i]) / (x[i] - x[j]);
            diag -= D(i, j);
        }
        D(i, i) = diag;
    }
    return D;
}

// Barycentric interpolation of CGL samples at an arbitrary point.
double cgl_interpolate(const std::vector<double>& nodes, const std::vector<double>& values,
                       double x);

// Row of interpolation weights: value(x) = sum_j row[j] * values[j].
std::vector<double> cgl_interpolation_row(const std::vector<double>& nodes, double x);

// Chebyshev expansion sum_k c_k T_k(y) with y = (2x - a - b)/(b - a).
class ChebSeries {
public:
    ChebSeries() = default;
    ChebSeries(double a, double b, std::vector<double> coeffs);

    // Samples on ascending cgl_nodes(n, a, b).
    static ChebSeries from_cgl_values(double a, double b, const std::vector<double>& values);

    double operator()(double x) const;
    ChebSeries derivative() const;
    // Drops the trailing coefficients below rel_tol * max |c_k|.
    ChebSeries chopped(double rel_tol) const;

    const std::vector<double>& coeffs() const { return c_; }
    double a() const { return a_; }
    double b() const { return b_; }

private:
    double a_ = 0.0, b_ = 1.0;
    std::vector<double> c_;
};

}  // namespace wmlab
