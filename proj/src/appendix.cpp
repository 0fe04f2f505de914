#include "wmlab/appendix.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "wmlab/chebyshev.hpp"
#include "wmlab/profiles.hpp"
#include "wmlab/quadrature.hpp"
#include "wmlab/spectrum.hpp"

namespace wmlab {

namespace {

using RPoly = std::vector<Rational>;

RPoly rpoly_mul(const RPoly& a, const RPoly& b) {
    RPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

RPoly rpoly_pow(const RPoly& a, int e) {
    RPoly r{Rational(1)};
    for (int i = 0; i < e; ++i) r = rpoly_mul(r, a);
    return r;
}

Rational rcoef(const RPoly& p, size_t i) { return i < p.size() ? p[i] : Rational(0); }

double g1_m(double y, int m) { return 1.0 / (y * y + 2.0 * m - 1.0); }

// int_0^rho f(y) dy where f(y) ~ (1-y)^{-k} near 1: the part above 1/2 is
// integrated in s = log(1 - y).
double integrate_to_near_one(const std::function<double(double)>& f, double rho) {
    if (rho <= 0.5) return integrate(f, 0.0, rho, 1e-14).value;
    const double head = integrate(f, 0.0, 0.5, 1e-14).value;
    auto g = [&](double s) {
        const double u = std::exp(s);
        return f(1.0 - u) * u;
    };
    return head + integrate(g, std::log(1.0 - rho), std::log(0.5), 1e-14).value;
}

long double integrate_to_near_one_ext(const std::function<long double(long double)>& f, long double rho) {
    if (rho <= 0.5L) return integrate_extended(f, 0.0L, rho);
    const long double head = integrate_extended(f, 0.0L, 0.5L);
    auto g = [&](long double s) {
        const long double u = std::exp(s);
        return f(1.0L - u) * u;
    };
    return head + integrate_extended(g, std::log(1.0L - rho), std::log(0.5L));
}

template <class Real>
Real F_d_impl(Real y, const Dimension& dim) {
    const Real c = dim.c();
    const Real q = y * y + c;
    return std::pow(y, dim.d() + 1) * (y * y + 5 * c) / (std::pow(1 + y, Real(0.5) * (dim.d() - 3)) * q * q * q);
}

}  // namespace

double F_d(double y, const Dimension& dim) { return F_d_impl(y, dim); }
long double F_d(long double y, const Dimension& dim) { return F_d_impl(y, dim); }

double G_d(double y, const Dimension& dim) {
    const double q = y * y + dim.c();
    return (y * y + 5.0 * dim.c()) / (q * q);
}

double u_hat2(double rho, const Dimension& dim, double rho1) { return kernel_second_branch(rho, dim, rho1); }

std::vector<Rational> F_d_taylor_at_one(const Dimension& dim, int count) {
    const int d = dim.d();
    const int p = (d - 3) / 2;
    const Rational c(d - 2);
    const RPoly y{Rational(1), Rational(-1)};  // y = 1 - t
    const RPoly y2 = rpoly_mul(y, y);
    RPoly num = rpoly_mul(rpoly_pow(y, d + 1), RPoly{y2[0] + 5 * c, y2[1], y2[2]});
    RPoly den = rpoly_mul(rpoly_pow(RPoly{Rational(2), Rational(-1)}, p), rpoly_pow(RPoly{y2[0] + c, y2[1], y2[2]}, 3));
    std::vector<Rational> f(count, Rational(0));
    for (int i = 0; i < count; ++i) {
        Rational s = rcoef(num, i);
        for (int j = 1; j <= i; ++j) s -= rcoef(den, j) * f[i - j];
        f[i] = s / den[0];
    }
    return f;
}

Rational u_hat2_leading_coefficient(const Dimension& dim) {
    // u_hat2 = g1(rho) * (-int_rho^1 (1-x)^{p-1} [(1+x)^{p-1} x^{-d-1} (x^2+c)^2] dx),
    // and the bracket equals 2^{p-1} (1+c)^2 at x = 1.
    const int p = (dim.d() - 3) / 2;
    if (p < 1) throw std::invalid_argument("u_hat2_leading_coefficient: needs d >= 5");
    const Rational onec(dim.d() - 1);
    Rational two_pow(1);
    for (int i = 0; i < p - 1; ++i) two_pow *= 2;
    return -two_pow * onec * onec / (onec * p);
}

Rational log_coefficient_from_taylor(const std::vector<Rational>& taylor, int p, const Rational& b0) {
    if (p < 1) throw std::invalid_argument("log_coefficient_from_taylor: p must be >= 1");
    return -b0 * rcoef(taylor, p - 1);
}

LogFit fit_log_term(const std::function<double(double)>& I_of_t, int p, double t_lo, double t_hi, int samples) {
    const int n_pow = p + 6;
    const int n_log = 5;
    const int cols = n_pow + n_log;
    Eigen::MatrixXd A(samples, cols);
    Eigen::VectorXd b(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = std::exp(std::log(t_lo) + (std::log(t_hi) - std::log(t_lo)) * i / (samples - 1));
        const double tau = t / t_hi;
        for (int j = 0; j < n_pow; ++j) A(i, j) = std::pow(tau, j);
        for (int j = 0; j < n_log; ++j) A(i, n_pow + j) = std::pow(tau, p + j) * std::log(t);
        b[i] = I_of_t(t);
    }
    Eigen::VectorXd colscale(cols);
    for (int j = 0; j < cols; ++j) {
        colscale[j] = A.col(j).norm();
        A.col(j) /= colscale[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    LogFit fit;
    fit.condition = sv[0] / sv[sv.size() - 1];
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    fit.rms_residual = std::sqrt((A * x - b).squaredNorm() / samples);
    fit.log_coefficient = x[n_pow] / colscale[n_pow] / std::pow(t_hi, p);
    fit.reliable = std::isfinite(fit.log_coefficient) && fit.condition < 1e13;
    return fit;
}

double I_d_at(double t, const Dimension& dim, const std::function<long double(long double)>& F) {
    using LD = long double;
    const int d = dim.d();
    const int p = (d - 3) / 2;
    const LD c = dim.c();
    const LD tt = t;
    const LD rho = 1.0L - tt;
    auto h = [&](LD u) {
        const LD x = 1.0L - u;
        const LD q = x * x + c;
        return std::pow(u * (1.0L + x), LD(0.5) * (d - 5)) * std::pow(x, -d - 1) * q * q;
    };
    const LD u2 = -integrate_extended(h, 0.0L, tt) / (rho * rho + c);
    auto f = [&](LD y) { return F(y) / std::pow(1.0L - y, p); };
    return static_cast<double>(u2 * integrate_to_near_one_ext(f, rho));
}

LogDetection log_coefficient_Id(const Dimension& dim) {
    if (dim.d() < 5) throw std::invalid_argument("log_coefficient_Id: needs d >= 5");
    const int p = (dim.d() - 3) / 2;
    const auto taylor = F_d_taylor_at_one(dim, p + 1);
    const Rational b0 = u_hat2_leading_coefficient(dim);
    const Rational exact = log_coefficient_from_taylor(taylor, p, b0);
    LogDetection out;
    out.d = dim.d();
    out.exact = exact.str();
    out.series = static_cast<double>(exact);
    out.b0 = b0.str();
    out.taylor_coefficient = taylor[p - 1].str();
    const LogFit fit = fit_log_term([&](double t) { return I_d_at(t, dim, [&](long double y) { return F_d(y, dim); }); }, p);
    out.fit = fit.log_coefficient;
    out.fit_rms = fit.rms_residual;
    out.fit_reliable = fit.reliable;
    out.agreement = std::abs(out.series - out.fit) / std::max(std::abs(out.series), 1e-300);
    return out;
}

std::pair<Rational, double> log_coefficient_control(const Dimension& dim) {
    const int p = (dim.d() - 3) / 2;
    const auto taylor = F_d_taylor_at_one(dim, p + 1);
    std::vector<Rational> shifted(p + 1, Rational(0));
    for (int i = p; i <= p; ++i) shifted[i] = taylor[i - p];
    const Rational b0 = u_hat2_leading_coefficient(dim);
    const Rational exact = log_coefficient_from_taylor(shifted, p, b0);
    auto Fc = [&](long double y) { return std::pow(1.0L - y, p) * F_d(y, dim); };
    const LogFit fit = fit_log_term([&](double t) { return I_d_at(t, dim, Fc); }, p);
    return {exact, fit.log_coefficient};
}

double U_m(double rho, int m) {
    if (rho <= 0.0) return 0.0;
    auto f = [m](double y) {
        const double g = g1_m(y, m);
        return std::pow(y, 2 * m + 2) * std::pow(1.0 - y * y, -m) * g * g;
    };
    return std::pow(1.0 - rho * rho, m - 1) * integrate_to_near_one(f, rho);
}

double J_m(double rho, int m) {
    if (rho <= 0.0) return 0.0;
    const double c = 2.0 * m - 1.0;
    auto f = [m, c](double y) {
        const double q = y * y + c;
        const double g = 1.0 / q, gp = -2.0 * y / (q * q);
        return std::pow(y, 2 * m + 2) * std::pow(1.0 - y * y, -(m - 1)) * (2.0 * y * g * gp + 5.0 * g * g);
    };
    return std::pow(1.0 - rho * rho, m - 1) * integrate_to_near_one(f, rho);
}

double J_m_identity_error(int m) {
    if (m < 2) throw std::invalid_argument("J_m_identity_error: m must be >= 2");
    double err = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double rho = 0.95 * i / 20.0;
        const double g = g1_m(rho, m);
        const double rhs = std::pow(rho, 2 * m + 3) * g * g - 2.0 * (m - 1) * U_m(rho, m);
        err = std::max(err, std::abs(J_m(rho, m) - rhs));
    }
    return err;
}

double u_tilde1(double rho, int m) {
    if (rho == 0.0) return 0.0;
    return U_m(rho, m) / (g1_m(rho, m) * std::pow(rho, 2 * m + 1));
}

namespace {

struct Derivs {
    double u, du, ddu;
};

// u~1 and two derivatives from u~1 = A(rho) I(rho), I' = h.
Derivs u_tilde1_exact(double rho, int m) {
    const double c = 2.0 * m - 1.0;
    const double r2 = rho * rho, q = r2 + c, w = 1.0 - r2;
    auto f = [m](double y) {
        const double g = g1_m(y, m);
        return std::pow(y, 2 * m + 2) * std::pow(1.0 - y * y, -m) * g * g;
    };
    const double I = integrate_to_near_one(f, rho);
    const double h = f(rho);
    const double hl = (2.0 * m + 2.0) / rho + 2.0 * m * rho / w - 4.0 * rho / q;
    const double A = std::pow(w, m - 1) * q * std::pow(rho, -(2 * m + 1));
    const double l = -2.0 * (m - 1) * rho / w + 2.0 * rho / q - (2.0 * m + 1.0) / rho;
    const double lp = -2.0 * (m - 1) * (1.0 + r2) / (w * w) + 2.0 * (c - r2) / (q * q) + (2.0 * m + 1.0) / r2;
    const double Ap = A * l, App = A * (l * l + lp);
    return {A * I, Ap * I + A * h, App * I + 2.0 * Ap * h + A * h * hl};
}

double susy_operator(double rho, int m, double u, double du, double ddu) {
    const double k = 2.0 * m - 1.0;
    const double r2 = rho * rho;
    return (1.0 - r2) * ddu + ((k + 1.0) / rho - 4.0 * rho) * du - 2.0 * u +
           (2.0 * k / r2) * (r2 - k - 2.0) / (r2 + k) * u;
}

double w_factor(double rho, int m) {
    const double c = 2.0 * m - 1.0;
    return (m + 1.0) / rho - (2.0 - m) * rho / (1.0 - rho * rho) - 2.0 * rho / (rho * rho + c);
}

double w_factor_prime(double rho, int m) {
    const double c = 2.0 * m - 1.0;
    const double r2 = rho * rho, w = 1.0 - r2, q = r2 + c;
    return -(m + 1.0) / r2 - (2.0 - m) * (1.0 + r2) / (w * w) - 2.0 * (c - r2) / (q * q);
}

// (1-rho^2)^2 (v'' + w' v - w^2 v) - 4 rho (1-rho^2)(v' + w v), relative to its largest term.
double factored_relative(double rho, int m, double v, double dv, double ddv) {
    const double w = w_factor(rho, m), wp = w_factor_prime(rho, m);
    const double s = 1.0 - rho * rho;
    const double t1 = s * s * ddv, t2 = s * s * (wp - w * w) * v, t3 = -4.0 * rho * s * dv, t4 = -4.0 * rho * s * w * v;
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), 1e-300});
    return std::abs(t1 + t2 + t3 + t4) / scale;
}

}  // namespace

SusyWitness susy_residual(int m, int n, double b) {
    if (m < 2) throw std::invalid_argument("susy_residual: m must be >= 2");
    SusyWitness out;
    out.m = m;
    out.n = n;
    out.b = b;
    // u~1 is even and analytic on [0, b]: represent it in x = rho^2.
    const auto x = cgl_nodes<double>(n, 0.0, b * b);
    const Eigen::MatrixXd D = cgl_diff_matrix<double>(x);
    Eigen::VectorXd p(n);
    for (int j = 0; j < n; ++j) p[j] = u_tilde1(std::sqrt(x[j]), m);
    const Eigen::VectorXd dp = D * p, ddp = D * dp;
    for (int j = 1; j < n - 1; ++j) {
        const double r = std::sqrt(x[j]);
        const double du = 2.0 * r * dp[j];
        const double ddu = 2.0 * dp[j] + 4.0 * x[j] * ddp[j];
        out.residual_sup = std::max(out.residual_sup, std::abs(susy_operator(r, m, p[j], du, ddu)));
        const Derivs e = u_tilde1_exact(r, m);
        out.residual_sup_exact = std::max(out.residual_sup_exact, std::abs(susy_operator(r, m, e.u, e.du, e.ddu)));
    }

    // Factorized form on a Chebyshev grid in rho away from the origin.
    const double lo = 0.2;
    const auto r = cgl_nodes<double>(n, lo, b);
    const Eigen::MatrixXd Dr = cgl_diff_matrix<double>(r);
    const double c = 2.0 * m - 1.0;
    Eigen::VectorXd vt(n), inv(n);
    for (int j = 0; j < n; ++j) {
        const double rr = r[j];
        vt[j] = std::pow(rr, m) * std::pow(1.0 - rr * rr, -0.5 * m) * u_tilde1(rr, m);
        inv[j] = 1.0 / (std::pow(rr, m + 1) * std::pow(1.0 - rr * rr, 1.0 - 0.5 * m) / (rr * rr + c));
    }
    const Eigen::VectorXd dvt = Dr * vt, ddvt = Dr * dvt;
    const Eigen::VectorXd dinv = Dr * inv, ddinv = Dr * dinv;
    for (int j = 1; j < n - 1; ++j) {
        out.factored_residual = std::max(out.factored_residual, factored_relative(r[j], m, vt[j], dvt[j], ddvt[j]));
        out.inverse_v1_residual =
            std::max(out.inverse_v1_residual, factored_relative(r[j], m, inv[j], dinv[j], ddinv[j]));
    }
    return out;
}

NonanalyticityFit u_tilde1_nonanalyticity(int m) {
    NonanalyticityFit out;
    const int p = m - 1;
    auto U_near_one = [m](double t) { return U_m(1.0 - t, m); };
    out.rms_with_log = fit_log_term(U_near_one, p).rms_residual;
    // Same fit without the logarithmic columns.
    const int samples = 80, cols = p + 11;
    Eigen::MatrixXd A(samples, cols);
    Eigen::VectorXd bv(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = std::exp(std::log(1e-5) + (std::log(1e-2) - std::log(1e-5)) * i / (samples - 1));
        for (int j = 0; j < cols; ++j) A(i, j) = std::pow(t / 1e-2, j);
        bv[i] = U_near_one(t);
    }
    const Eigen::VectorXd xs = A.colPivHouseholderQr().solve(bv);
    out.rms_without_log = std::sqrt((A * xs - bv).squaredNorm() / samples);

    // Even polynomial fit near the origin.
    const int ns = 40, deg = 10;
    Eigen::MatrixXd E(ns, deg + 1);
    Eigen::VectorXd ev(ns);
    for (int i = 0; i < ns; ++i) {
        const double rho = 0.3 * (i + 1) / ns;
        for (int j = 0; j <= deg; ++j) E(i, j) = std::pow(rho * rho / 0.09, j);
        ev[i] = u_tilde1(rho, m);
    }
    const Eigen::VectorXd xe = E.colPivHouseholderQr().solve(ev);
    out.even_fit_residual = (E * xe - ev).cwiseAbs().maxCoeff();
    return out;
}

std::pair<double, double> u_hat2_log_coefficient_d3() {
    const Dimension dim(3);
    const double c = dim.c();
    auto h = [c](double x) {
        const double q = x * x + c;
        return std::pow(1.0 - x * x, -1.0) * std::pow(x, -4) * q * q;
    };
    auto u2 = [&](double t) {
        const double rho = 1.0 - t;
        auto g = [&](double s) {
            const double u = std::exp(s);
            return h(1.0 - u) * u;
        };
        // int_{1/2}^{rho} h = int_{log t}^{log 1/2} h(1 - e^s) e^s ds
        return integrate(g, std::log(t), std::log(0.5), 1e-14).value / (rho * rho + c);
    };
    const LogFit fit = fit_log_term(u2, 0);
    return {fit.log_coefficient, -(1.0 + c) / 2.0};
}

}  // namespace wmlab
