#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <string>
#include <vector>

#include "wmlab/dimension.hpp"

namespace wmlab {

using Rational = boost::multiprecision::cpp_rational;

// y^{d+1}(y^2 + 5(d-2)) / ((1+y)^{(d-3)/2} (y^2 + d - 2)^3)
double F_d(double y, const Dimension& dim);
long double F_d(long double y, const Dimension& dim);
// (y^2 + 5(d-2)) / (y^2 + d - 2)^2
double G_d(double y, const Dimension& dim);

// Second kernel branch anchored at rho1 (see kernel_second_branch).
double u_hat2(double rho, const Dimension& dim, double rho1);

// Taylor coefficients of F_d at y = 1 in powers of (1 - y), exact.
std::vector<Rational> F_d_taylor_at_one(const Dimension& dim, int count);

// Leading coefficient b0 of u_hat2 = (1-rho)^{(d-3)/2} (b0 + ...) near rho = 1 (d >= 5), exact.
Rational u_hat2_leading_coefficient(const Dimension& dim);

// Coefficient of (1-rho)^p log(1-rho), p = (d-3)/2, in u_hat2(rho) int_0^rho F(y)/(1-y)^p dy
// given the Taylor coefficients of F at y = 1.
Rational log_coefficient_from_taylor(const std::vector<Rational>& taylor, int p, const Rational& b0);

struct LogFit {
    double log_coefficient = 0.0;
    double rms_residual = 0.0;
    double condition = 0.0;
    bool reliable = false;
};

// Least-squares fit of I(1 - t) on t in [t_lo, t_hi] (log-spaced) against
// {t^j} and {t^{p+j} log t}; returns the coefficient of t^p log t.
LogFit fit_log_term(const std::function<double(double)>& I_of_t, int p, double t_lo = 1e-5, double t_hi = 1e-2,
                    int samples = 80);

// u_hat2(rho) int_0^rho F(y)/(1-y)^p dy evaluated at rho = 1 - t, in extended precision.
double I_d_at(double t, const Dimension& dim, const std::function<long double(long double)>& F);

struct LogDetection {
    int d = 5;
    std::string exact;        // series method, exact rational
    double series = 0.0;      // series method as double
    double fit = 0.0;         // fit method
    double agreement = 0.0;   // |series - fit| / |series|
    bool fit_reliable = false;
    double fit_rms = 0.0;
    std::string b0;
    std::string taylor_coefficient;  // f_{p-1}
};

// Throws std::invalid_argument for d < 5.
LogDetection log_coefficient_Id(const Dimension& dim);

// Control: F replaced by (1-y)^p F. Exact coefficient and fitted value.
std::pair<Rational, double> log_coefficient_control(const Dimension& dim);

double U_m(double rho, int m);
double J_m(double rho, int m);
// max |J_m - (rho^{2m+3} g1^2 - 2(m-1) U_m)| over 20 points in (0, 0.95].
double J_m_identity_error(int m);

struct SusyWitness {
    int m = 2;
    int n = 64;
    double b = 0.9;                 // grid covers rho in [0, b]
    double residual_sup = 0.0;      // spectral differentiation of u~1
    double residual_sup_exact = 0.0;  // derivatives from the integral representation
    double factored_residual = 0.0;   // v~1 in the factorized equation
    double inverse_v1_residual = 0.0;  // 1/v1 in the factorized equation
};

// Throws std::invalid_argument for m < 2.
SusyWitness susy_residual(int m, int n = 64, double b = 0.9);

// u~1(rho) = U_m(rho) / (g1(rho) rho^{2m+1}).
double u_tilde1(double rho, int m);

struct NonanalyticityFit {
    double rms_without_log = 0.0;
    double rms_with_log = 0.0;
    double even_fit_residual = 0.0;  // polynomial in rho^2 near 0
};

NonanalyticityFit u_tilde1_nonanalyticity(int m);

// Coefficient of log(1-rho) in u_hat2 near rho = 1 for d = 3: fitted and exact -(1+c)/2.
std::pair<double, double> u_hat2_log_coefficient_d3();

}  // namespace wmlab
