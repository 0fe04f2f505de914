#pragma once

#include <functional>
#include <vector>

namespace wmlab {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [a, b], nodes ascending.
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

struct Integral {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod (61 point) integration of f over [a, b].
Integral integrate(const std::function<double(double)>& f, double a, double b,
                   double rel_tol = 1e-14, unsigned max_depth = 12);

// Same in long double; used where samples feed ill-conditioned fits.
long double integrate_extended(const std::function<long double(long double)>& f, long double a, long double b,
                               long double rel_tol = 1e-17L, unsigned max_depth = 12);

}  // namespace wmlab
