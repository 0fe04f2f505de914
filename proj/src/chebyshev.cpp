#include "wmlab/chebyshev.hpp"

#include <algorithm>
#include <stdexcept>

namespace wmlab {

std::vector<double> cgl_interpolation_row(const std::vector<double>& nodes, double x) {
    const int n = static_cast<int>(nodes.size());
    const auto w = cgl_barycentric_weights<double>(n);
    std::vector<double> row(n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (x == nodes[j]) {
            row[j] = 1.0;
            return row;
        }
    }
    double denom = 0.0;
    for (int j = 0; j < n; ++j) {
        row[j] = w[j] / (x - nodes[j]);
        denom += row[j];
    }
    for (double& r : row) r /= denom;
    return row;
}

double cgl_interpolate(const std::vector<double>& nodes, const std::vector<double>& values,
                       double x) {
    const auto row = cgl_interpolation_row(nodes, x);
    double s = 0.0;
    for (size_t j = 0; j < row.size(); ++j) s += row[j] * values[j];
    return s;
}

ChebSeries::ChebSeries(double a, double b, std::vector<double> coeffs)
    : a_(a), b_(b), c_(std::move(coeffs)) {}

ChebSeries ChebSeries::from_cgl_values(double a, double b, const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw std::invalid_argument("ChebSeries: need at least two samples");
    const int N = n - 1;
    const double pi = std::acos(-1.0);
    std::vector<double> c(n, 0.0);
    // Ascending node j sits at y_j = -cos(pi j / N), so T_k(y_j) = (-1)^k cos(pi k j / N).
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            double term = values[j] * std::cos(pi * double((static_cast<long>(k) * j) % (2 * N)) / N);
            if (j == 0 || j == N) term *= 0.5;
            s += term;
        }
        s *= 2.0 / N;
        if (k == 0 || k == N) s *= 0.5;
        c[k] = (k % 2 == 0) ? s : -s;
    }
    return ChebSeries(a, b, std::move(c));
}

double ChebSeries::operator()(double x) const {
    const double y = (2.0 * x - a_ - b_) / (b_ - a_);
    double b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(c_.size()) - 1; k >= 1; --k) {
        double b0 = 2.0 * y * b1 - b2 + c_[k];
        b2 = b1;
        b1 = b0;
    }
    return (c_.empty() ? 0.0 : c_[0]) + y * b1 - b2;
}

ChebSeries ChebSeries::derivative() const {
    const int n = static_cast<int>(c_.size());
    if (n <= 1) return ChebSeries(a_, b_, {0.0});
    std::vector<double> d(n - 1, 0.0);
    // c'_{k-1} = c'_{k+1} + 2 k c_k, with c'_0 halved at the end.
    std::vector<double> dd(n + 1, 0.0);
    for (int k = n - 1; k >= 1; --k) dd[k - 1] = dd[k + 1] + 2.0 * k * c_[k];
    dd[0] *= 0.5;
    const double scale = 2.0 / (b_ - a_);
    for (int k = 0; k < n - 1; ++k) d[k] = dd[k] * scale;
    return ChebSeries(a_, b_, std::move(d));
}

ChebSeries ChebSeries::chopped(double rel_tol) const {
    double mx = 0.0;
    for (double v : c_) mx = std::max(mx, std::abs(v));
    size_t keep = c_.size();
    while (keep > 1 && std::abs(c_[keep - 1]) <= rel_tol * mx) --keep;
    return ChebSeries(a_, b_, std::vector<double>(c_.begin(), c_.begin() + keep));
}

}  // namespace wmlab
