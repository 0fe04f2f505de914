#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wmlab/dimension.hpp"
#include "wmlab/kernels.hpp"

namespace wmlab {

using cd = std::complex<double>;

// Spectral ODE for v = rho u1:
//   (1 - rho^2) v'' + ((d-1)/rho - 2(lambda+1) rho) v' - (lambda(lambda+1) + (d-1)/2 Vhat) v = 0.
enum class ExpansionPoint { zero, one };
enum class Branch { admissible, singular };

// Local form t^2 p2(t) v'' + t p1(t) v' + p0(t) v = 0 with t = rho or t = 1 - rho
// (derivatives in t), obtained after multiplying by rho^2 (rho^2 + d - 2)^2.
struct LocalEquation {
    ExpansionPoint point;
    std::vector<cd> p2, p1, p0;  // ascending powers of t
    cd indicial(cd r) const { return p2[0] * r * (r - 1.0) + p1[0] * r + p0[0]; }
};

LocalEquation local_equation(ExpansionPoint point, cd lambda, const Dimension& dim);

// At 0: (1, -(d-1)); at 1: (0, (d-1)/2 - lambda).
std::pair<cd, cd> indices(ExpansionPoint point, cd lambda, const Dimension& dim);

// v = t^s sum_k coeffs[k] t^k + log_constant * log(t) * t^{log_index} sum_k log_coeffs[k] t^k
struct FrobeniusSeries {
    ExpansionPoint point = ExpansionPoint::zero;
    cd index;
    std::vector<cd> coeffs;
    bool resonant = false;  // the other index exceeds this one by a nonnegative integer
    bool has_log = false;   // resonance constant nonzero
    cd log_constant = 0.0;
    cd log_index = 0.0;
    std::vector<cd> log_coeffs;
    double radius_hint = 1.0;

    // (v, dv/drho) at rho.
    std::pair<cd, cd> evaluate(double rho) const;
};

struct ResonanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument for order < 10.
FrobeniusSeries frobenius_series(ExpansionPoint point, Branch branch, cd lambda, const Dimension& dim,
                                 int order);

// Residual of the spectral ODE for a (value, first, second derivative) triple.
cd ode_residual(double rho, cd lambda, const Dimension& dim, cd v, cd dv, cd ddv);

// Series at rho = 1 for the index-0 branch multiplied by prod_{j=1}^{J} (j - sigma),
// sigma = (d-1)/2 - lambda. Entire in lambda as long as sigma avoids J+1, J+2, ...
// Throws ResonanceError otherwise.
std::vector<cd> normalized_series_at_one(cd lambda, const Dimension& dim, int order, int J);

// Smallest J for which normalized_series_at_one is entire on Re lambda >= re_min.
int normalization_order(const Dimension& dim, double re_min);

struct ConnectionOptions {
    int order = 48;
    double matching_point = 0.5;
    double seed_offset = 0.05;
    int normalization = -1;  // J; negative selects normalization_order(dim, -1)
    double abs_tol = 1e-15;
    double rel_tol = 1e-13;
};

struct ConnectionValue {
    cd lambda;
    cd wronskian;   // raw Wronskian at the matching point
    cd normalized;  // wronskian * rho^{d-1} (1 - rho^2)^{lambda + 1 - (d-1)/2}, independent of rho
    double matching_point = 0.5;
};

struct ConnectionError : std::runtime_error {
    ConnectionError(const std::string& what, cd lambda) : std::runtime_error(what), lambda(lambda) {}
    cd lambda;
};

ConnectionValue connection(cd lambda, const Dimension& dim, const ConnectionOptions& opt = {});

// normalized connection values for many lambda, evaluated independently.
std::vector<cd> connection_batch(const std::vector<cd>& lambdas, const Dimension& dim,
                                 const ConnectionOptions& opt, Execution exec);

// Admissible-at-0 solution v (index 1, leading coefficient 1) at increasing points in (0, 1).
std::vector<cd> shooting_solution(cd lambda, const Dimension& dim, const std::vector<double>& rho,
                                  const ConnectionOptions& opt = {});

struct Disk {
    cd center;
    double radius;
};

struct SearchRegion {
    double re_min = 0.0;
    double radius = 15.0;
    std::vector<Disk> excluded;
};

// Parses "re>=A,abs<=R" with optional ",exclude=x+yi:r" entries.
SearchRegion parse_region(const std::string& s);
std::string to_string(const SearchRegion& r);

struct EigenvalueCandidate {
    cd value;
    double residual;  // |W(lambda)| / max over the boundary of |W|
};

struct WSample {
    cd lambda;
    double abs_w;
};

struct SpectrumReport {
    SearchRegion region;
    int dimension = 3;
    std::vector<EigenvalueCandidate> eigenvalues;
    int winding_count = 0;
    double boundary_max = 0.0;
    double boundary_min = 0.0;
    bool consistent = false;
    int evaluations = 0;
    int seeds = 0;
    std::vector<WSample> boundary_samples;
};

struct SearchOptions {
    ConnectionOptions connection;
    double seed_spacing = 0.5;
    double newton_fd_step = 1e-5;
    double root_tol = 1e-10;
    double dedupe = 1e-6;
    int boundary_points = 600;
    Execution exec = Execution::parallel;
};

SpectrumReport find_eigenvalues(const SearchRegion& region, const Dimension& dim,
                                const SearchOptions& opt = {});

// Winding number of the normalized connection function along the region boundary.
int winding_number(const SearchRegion& region, const Dimension& dim, const SearchOptions& opt,
                   double* boundary_max = nullptr, double* boundary_min = nullptr,
                   std::vector<WSample>* samples = nullptr, int* evaluations = nullptr);

struct CollocationEigenvalue {
    cd value;
    bool converged;  // matched within 1e-4 on the doubled grid
};

// Eigenvalues of the discretized operator (long double assembly), sorted by decreasing real part.
std::vector<CollocationEigenvalue> collocation_spectrum(const Dimension& dim, int n);

struct CollocationGaugeCheck {
    double eigenvalue;            // discrete eigenvalue closest to 1
    double eigenvector_error;     // relative sup error against (g1, g2) after scaling
};

CollocationGaugeCheck collocation_gauge_check(const Dimension& dim, int n);

// Second kernel branch g1(rho) int_{rho1}^{rho} (1-x^2)^{(d-5)/2} x^{-d-1} (x^2+d-2)^2 dx.
double kernel_second_branch(double rho, const Dimension& dim, double rho1);
// rho1 = 1 for d >= 5, 1/2 for d = 3.
double default_kernel_anchor(const Dimension& dim);

struct KernelSecondSolution {
    std::vector<double> rho;
    std::vector<double> values;
    double leading_power;  // log-log slope near rho = 0
};

KernelSecondSolution kernel_second_solution(const Dimension& dim, const std::vector<double>& rho);

}  // namespace wmlab
