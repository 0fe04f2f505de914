#include "wmlab/profiles.hpp"

#include <cmath>
#include <stdexcept>

#include "wmlab/quadrature.hpp"

namespace wmlab {

namespace {

constexpr int kSeriesTerms = 12;
constexpr int kTensorPoints = 32;

const GaussRule& unit_rule() {
    static const GaussRule rule = gauss_legendre(kTensorPoints, 0.0, 1.0);
    return rule;
}

// sin(x) - x without cancellation for small |x|.
double sin_minus_id(double x) {
    if (std::abs(x) >= 0.5) return std::sin(x) - x;
    const double x2 = x * x;
    double term = -x * x2 / 6.0;
    double sum = term;
    for (int k = 2; k < 12; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
    }
    return sum;
}

}  // namespace

double f0(double rho, const Dimension& dim) { return 2.0 * std::atan(rho / dim.sqrt_c()); }

double f0_prime(double rho, const Dimension& dim) {
    return 2.0 * dim.sqrt_c() / (rho * rho + dim.c());
}

double f0_second(double rho, const Dimension& dim) {
    const double q = rho * rho + dim.c();
    return -4.0 * rho * dim.sqrt_c() / (q * q);
}

double f0_third(double rho, const Dimension& dim) {
    const double q = rho * rho + dim.c();
    return 4.0 * dim.sqrt_c() * (3.0 * rho * rho - dim.c()) / (q * q * q);
}

double f0_over_rho(double rho, const Dimension& dim) {
    if (rho >= kSmallRho) return f0(rho, dim) / rho;
    // 2 atan(z)/rho = (2/sqrt c) sum (-1)^k z^{2k}/(2k+1), z = rho/sqrt c
    const double z2 = rho * rho / dim.c();
    double sum = 0.0;
    for (int k = kSeriesTerms - 1; k >= 0; --k) {
        sum = 1.0 / (2.0 * k + 1.0) - z2 * sum;
    }
    return 2.0 / dim.sqrt_c() * sum;
}

std::pair<double, double> psiT(double t, double r, double T, const Dimension& dim) {
    if (!(t < T)) throw std::domain_error("psiT: t must satisfy t < T");
    if (r < 0.0) throw std::domain_error("psiT: r must be nonnegative");
    const double s = T - t;
    const double rho = r / s;
    return {f0(rho, dim), f0_prime(rho, dim) * r / (s * s)};
}

double profile_residual(double t, double r, double T, const Dimension& dim) {
    if (!(t < T)) throw std::domain_error("profile_residual: t must satisfy t < T");
    if (!(r > 0.0)) throw std::domain_error("profile_residual: r must be positive");
    const double s = T - t;
    const double rho = r / s;
    const double f = f0(rho, dim), fp = f0_prime(rho, dim), fpp = f0_second(rho, dim);
    const double k = dim.d() - 1;
    // rho_t = rho / s, rho_r = 1 / s
    const double psi_tt = (fpp * rho * rho + 2.0 * fp * rho) / (s * s);
    const double psi_rr = fpp / (s * s);
    const double psi_r = fp / s;
    return psi_tt - psi_rr - k / r * psi_r + 0.5 * k * std::sin(2.0 * f) / (r * r);
}

double potential_V(double rho, const Dimension& dim) {
    const double q = rho * rho + dim.c();
    return -16.0 * dim.c() / (q * q);
}

double potential_Vhat(double rho, const Dimension& dim) {
    if (rho == 0.0) throw std::domain_error("potential_Vhat: singular at rho = 0");
    const double c = dim.c();
    const double r2 = rho * rho;
    const double q = r2 + c;
    return 2.0 * (r2 * r2 - 6.0 * c * r2 + c * c) / (r2 * q * q);
}

double eta(double x) { return std::sin(2.0 * x) - 2.0 * x; }

double eta_deriv(double x, int order) {
    switch (order) {
        case 0: return eta(x);
        case 1: return 2.0 * std::cos(2.0 * x) - 2.0;
        case 2: return -4.0 * std::sin(2.0 * x);
        case 3: return -8.0 * std::cos(2.0 * x);
        default: throw std::invalid_argument("eta_deriv: order must be in 0..3");
    }
}

double taylor_remainder_N(double f0_value, double s) {
    const double ss = std::sin(s);
    return std::sin(2.0 * f0_value) * (-2.0 * ss * ss) +
           std::cos(2.0 * f0_value) * sin_minus_id(2.0 * s);
}

double nonlinearity_Nhat_closed(double rho, double zeta, const Dimension& dim) {
    const double r3 = rho * rho * rho;
    return -0.5 * (dim.d() - 1) * taylor_remainder_N(f0(rho, dim), rho * zeta) / r3;
}

double nonlinearity_Nhat_integral(double rho, double zeta, const Dimension& dim) {
    const GaussRule& g = unit_rule();
    const double q = f0_over_rho(rho, dim);
    const double f = rho * q;
    double sum = 0.0;
    for (int i = 0; i < kTensorPoints; ++i) {
        const double x = g.nodes[i];
        for (int j = 0; j < kTensorPoints; ++j) {
            const double y = g.nodes[j];
            const double arg = f + x * y * rho * zeta;
            const double amp = (q + x * y * zeta) * x;
            double inner = 0.0;
            for (int k = 0; k < kTensorPoints; ++k) {
                inner += g.weights[k] * std::cos(2.0 * g.nodes[k] * arg);
            }
            sum += g.weights[i] * g.weights[j] * amp * inner;
        }
    }
    return 4.0 * (dim.d() - 1) * zeta * zeta * sum;
}

double nonlinearity_Nhat(double rho, double zeta, const Dimension& dim) {
    if (rho >= kSmallRho) return nonlinearity_Nhat_closed(rho, zeta, dim);
    if (rho == 0.0) {
        // The integrand is polynomial at rho = 0: cos(0) = 1.
        return 4.0 * (dim.d() - 1) * zeta * zeta * (1.0 / dim.sqrt_c() + zeta / 6.0);
    }
    return nonlinearity_Nhat_integral(rho, zeta, dim);
}

double nonlinearity_M(double rho, double zeta, const Dimension& dim) {
    const GaussRule& g = unit_rule();
    const double q = f0_over_rho(rho, dim);
    const double f = rho * q;
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
    for (int i = 0; i < kTensorPoints; ++i) {
        const double x = g.nodes[i];
        for (int j = 0; j < kTensorPoints; ++j) {
            const double y = g.nodes[j];
            const double wij = g.weights[i] * g.weights[j];
            const double arg = f + x * y * rho * zeta;
            double ic = 0.0, isz = 0.0;
            for (int k = 0; k < kTensorPoints; ++k) {
                const double z = g.nodes[k];
                const double s = 2.0 * z * arg;
                ic += g.weights[k] * std::cos(s);
                isz += g.weights[k] * std::sin(s) * z;
            }
            A += wij * ic * x;
            B += wij * isz * x * x * y;
            C += wij * ic * x * x * y;
            D += wij * isz * x * x * x * y * y;
        }
    }
    const double z2 = zeta * zeta;
    A *= 2.0 * q * zeta;
    B *= -2.0 * f * z2;
    C *= 3.0 * z2;
    D *= -2.0 * rho * z2 * zeta;
    return 4.0 * (dim.d() - 1) * (A + B + C + D);
}

double GaugeMode::g1(double rho) const { return 1.0 / (rho * rho + dim.c()); }

double GaugeMode::g2(double rho) const {
    const double q = rho * rho + dim.c();
    return 2.0 * dim.c() / (q * q);
}

double GaugeMode::g1_prime(double rho) const {
    const double q = rho * rho + dim.c();
    return -2.0 * rho / (q * q);
}

double GaugeMode::g1_second(double rho) const {
    const double q = rho * rho + dim.c();
    return (6.0 * rho * rho - 2.0 * dim.c()) / (q * q * q);
}

GaugeMode gauge_mode(const Dimension& dim) { return GaugeMode{dim}; }

}  // namespace wmlab
