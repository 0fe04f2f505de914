#pragma once

#include <utility>

#include "wmlab/dimension.hpp"

namespace wmlab {

// Below this radius quotients by rho switch to series or integral forms.
inline constexpr double kSmallRho = 1e-2;

double f0(double rho, const Dimension& dim);
double f0_prime(double rho, const Dimension& dim);
double f0_second(double rho, const Dimension& dim);
double f0_third(double rho, const Dimension& dim);
double f0_over_rho(double rho, const Dimension& dim);

// (psi^T, d/dt psi^T) at (t, r); throws std::domain_error for t >= T.
std::pair<double, double> psiT(double t, double r, double T, const Dimension& dim);

// psi_tt - psi_rr - (d-1)/r psi_r + (d-1)/2 sin(2 psi)/r^2 for psi = psi^T,
// from closed-form derivatives of f0. Requires r > 0.
double profile_residual(double t, double r, double T, const Dimension& dim);

double potential_V(double rho, const Dimension& dim);
// Throws std::domain_error at rho = 0.
double potential_Vhat(double rho, const Dimension& dim);

double eta(double x);
// order in 0..3
double eta_deriv(double x, int order);

// Taylor remainder eta(f0 + s) - eta(f0) - eta'(f0) s in a cancellation-free form.
double taylor_remainder_N(double f0_value, double s);

double nonlinearity_Nhat(double rho, double zeta, const Dimension& dim);
// Closed-form branch only (rho > 0).
double nonlinearity_Nhat_closed(double rho, double zeta, const Dimension& dim);
// Triple-integral representation, fixed 32-point tensor Gauss rule.
double nonlinearity_Nhat_integral(double rho, double zeta, const Dimension& dim);
double nonlinearity_M(double rho, double zeta, const Dimension& dim);

struct GaugeMode {
    Dimension dim;
    double g1(double rho) const;
    double g2(double rho) const;
    double g1_prime(double rho) const;
    double g1_second(double rho) const;
};

GaugeMode gauge_mode(const Dimension& dim);

}  // namespace wmlab
