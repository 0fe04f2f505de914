#include "wmlab/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wmlab/chebyshev.hpp"
#include "wmlab/evolution.hpp"
#include "wmlab/profiles.hpp"
#include "wmlab/quadrature.hpp"

namespace wmlab {

namespace {

using Poly = std::vector<cd>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Poly poly_scale(const Poly& a, cd s) {
    Poly r = a;
    for (auto& v : r) v *= s;
    return r;
}

// P(1 - t) as a polynomial in t.
Poly compose_reflect(const Poly& p) {
    Poly r{0.0};
    const Poly one_minus_t{1.0, -1.0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        r = poly_mul(r, one_minus_t);
        r[0] += *it;
    }
    return r;
}

Poly shift_down(const Poly& p, size_t k) { return Poly(p.begin() + k, p.end()); }

Poly shift_up(const Poly& p, size_t k) {
    Poly r(k, 0.0);
    r.insert(r.end(), p.begin(), p.end());
    return r;
}

cd coef(const Poly& p, size_t j) { return j < p.size() ? p[j] : cd(0.0); }

// Sum_{j>=1} [p2_j (r_j)(r_j - 1) + p1_j r_j + p0_j] a_{k-j}, r_j = k - j + s.
cd recurrence_tail(const LocalEquation& eq, const std::vector<cd>& a, int k, cd s) {
    const int deg = static_cast<int>(std::max({eq.p2.size(), eq.p1.size(), eq.p0.size()})) - 1;
    cd sum = 0.0;
    for (int j = 1; j <= std::min(k, deg); ++j) {
        const cd r = double(k - j) + s;
        sum += (coef(eq.p2, j) * r * (r - 1.0) + coef(eq.p1, j) * r + coef(eq.p0, j)) * a[k - j];
    }
    return sum;
}

std::vector<cd> plain_series(const LocalEquation& eq, cd s, int order) {
    std::vector<cd> a(order, 0.0);
    a[0] = 1.0;
    for (int k = 1; k < order; ++k) a[k] = -recurrence_tail(eq, a, k, s) / eq.indicial(double(k) + s);
    return a;
}

// e_i = sum_j [p2_j (2(i - j + s) - 1) + p1_j] a_{i-j}
cd log_source(const LocalEquation& eq, const std::vector<cd>& a, int i, cd s) {
    const int deg = static_cast<int>(std::max(eq.p2.size(), eq.p1.size())) - 1;
    cd sum = 0.0;
    for (int j = 0; j <= std::min(i, deg); ++j) {
        const cd r = double(i - j) + s;
        sum += (coef(eq.p2, j) * (2.0 * r - 1.0) + coef(eq.p1, j)) * a[i - j];
    }
    return sum;
}

std::pair<cd, cd> eval_power_series(const std::vector<cd>& a, cd s, double t) {
    cd sum = 0.0, dsum = 0.0;
    for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k) {
        sum = sum * t + a[k];
        if (k >= 1) dsum = dsum * t + double(k) * a[k];
    }
    const cd ts = std::pow(cd(t), s);
    const cd val = ts * sum;
    const cd der = s * ts / t * sum + ts * dsum;
    return {val, der};
}

using OdeState = std::array<double, 4>;

struct SpectralSystem {
    cd lambda;
    double dm1;
    double c;
    void operator()(const OdeState& x, OdeState& dx, double rho) const {
        const cd v(x[0], x[1]), vp(x[2], x[3]);
        const double r2 = rho * rho, q = r2 + c;
        const double vhat = 2.0 * (r2 * r2 - 6.0 * c * r2 + c * c) / (r2 * q * q);
        const cd vpp =
            (-(dm1 / rho - 2.0 * (lambda + 1.0) * rho) * vp + (lambda * (lambda + 1.0) + 0.5 * dm1 * vhat) * v) /
            (1.0 - r2);
        dx = {vp.real(), vp.imag(), vpp.real(), vpp.imag()};
    }
};

std::pair<cd, cd> integrate_spectral(cd lambda, const Dimension& dim, std::pair<cd, cd> start, double from,
                                     double to, const ConnectionOptions& opt) {
    if (from == to) return start;
    namespace ode = boost::numeric::odeint;
    OdeState x{start.first.real(), start.first.imag(), start.second.real(), start.second.imag()};
    SpectralSystem sys{lambda, double(dim.d() - 1), dim.c()};
    auto stepper = ode::make_controlled(opt.abs_tol, opt.rel_tol, ode::runge_kutta_fehlberg78<OdeState>());
    const double dt = (to > from ? 1.0 : -1.0) * 1e-3;
    try {
        ode::integrate_adaptive(stepper, sys, x, from, to, dt);
    } catch (const std::exception& e) {
        throw ConnectionError(std::string("spectral ODE integration failed: ") + e.what(), lambda);
    }
    for (double v : x)
        if (!std::isfinite(v)) throw ConnectionError("spectral ODE integration produced non-finite values", lambda);
    return {cd(x[0], x[1]), cd(x[2], x[3])};
}

}  // namespace

LocalEquation local_equation(ExpansionPoint point, cd lambda, const Dimension& dim) {
    const double c = dim.c();
    const double dm1 = dim.d() - 1;
    const Poly q{c * c, 0.0, 2.0 * c, 0.0, 1.0};
    const Poly P2 = poly_mul(Poly{0.0, 0.0, 1.0, 0.0, -1.0}, q);
    const Poly P1 = poly_mul(q, Poly{0.0, dm1, 0.0, -2.0 * (lambda + 1.0)});
    const Poly P0 = poly_add(poly_scale(poly_mul(Poly{0.0, 0.0, lambda * (lambda + 1.0)}, q), -1.0),
                             Poly{-dm1 * c * c, 0.0, 6.0 * dm1 * c, 0.0, -dm1});
    LocalEquation eq{point, {}, {}, {}};
    if (point == ExpansionPoint::zero) {
        eq.p2 = shift_down(P2, 2);
        eq.p1 = shift_down(P1, 1);
        eq.p0 = P0;
    } else {
        eq.p2 = shift_down(compose_reflect(P2), 1);
        eq.p1 = poly_scale(compose_reflect(P1), -1.0);
        eq.p0 = shift_up(compose_reflect(P0), 1);
    }
    return eq;
}

std::pair<cd, cd> indices(ExpansionPoint point, cd lambda, const Dimension& dim) {
    if (point == ExpansionPoint::zero) return {1.0, -double(dim.d() - 1)};
    return {0.0, 0.5 * (dim.d() - 1) - lambda};
}

std::pair<cd, cd> FrobeniusSeries::evaluate(double rho) const {
    const double t = point == ExpansionPoint::zero ? rho : 1.0 - rho;
    auto [v, dv] = eval_power_series(coeffs, index, t);
    if (has_log) {
        auto [y, dy] = eval_power_series(log_coeffs, log_index, t);
        const double lt = std::log(t);
        v += log_constant * lt * y;
        dv += log_constant * (y / t + lt * dy);
    }
    if (point == ExpansionPoint::one) dv = -dv;
    return {v, dv};
}

FrobeniusSeries frobenius_series(ExpansionPoint point, Branch branch, cd lambda, const Dimension& dim, int order) {
    if (order < 10) throw std::invalid_argument("frobenius_series: order must be >= 10");
    const LocalEquation eq = local_equation(point, lambda, dim);
    const auto [s1, s2] = indices(point, lambda, dim);
    const cd s = branch == Branch::admissible ? s1 : s2;
    const cd other = branch == Branch::admissible ? s2 : s1;

    FrobeniusSeries fs;
    fs.point = point;
    fs.index = s;
    fs.radius_hint = 1.0;

    const cd gap = other - s;
    const double Nr = std::round(gap.real());
    const bool integer_gap = std::abs(gap - cd(Nr)) < 1e-12 && Nr >= 0.0;
    if (!integer_gap) {
        fs.coeffs = plain_series(eq, s, order);
        return fs;
    }
    const int N = static_cast<int>(Nr);
    fs.resonant = true;
    fs.log_index = other;
    fs.log_coeffs = plain_series(eq, other, order);
    const auto& y = fs.log_coeffs;
    std::vector<cd> b(order, 0.0);
    cd C = 0.0;
    if (N == 0) {
        C = 1.0;
        for (int k = 1; k < order; ++k)
            b[k] = -(recurrence_tail(eq, b, k, s) + log_source(eq, y, k, other)) / eq.indicial(double(k) + s);
    } else {
        b[0] = 1.0;
        double scale = 1.0;
        for (int k = 1; k < order; ++k) {
            const cd R = recurrence_tail(eq, b, k, s);
            if (k < N) {
                b[k] = -R / eq.indicial(double(k) + s);
            } else if (k == N) {
                C = -R / log_source(eq, y, 0, other);
                b[k] = 0.0;
            } else {
                b[k] = -(R + C * log_source(eq, y, k - N, other)) / eq.indicial(double(k) + s);
            }
            if (k <= N) scale = std::max(scale, std::abs(b[k - 1]));
        }
        // C vanishes exactly in exact arithmetic for some resonances; treat round-off as zero.
        if (std::abs(C) <= 1e-12 * scale) {
            C = 0.0;
            for (int k = N + 1; k < order; ++k) b[k] = -recurrence_tail(eq, b, k, s) / eq.indicial(double(k) + s);
        }
    }
    fs.coeffs = std::move(b);
    fs.log_constant = C;
    fs.has_log = C != 0.0;
    if (!fs.has_log) fs.log_coeffs.clear();
    return fs;
}

cd ode_residual(double rho, cd lambda, const Dimension& dim, cd v, cd dv, cd ddv) {
    const double dm1 = dim.d() - 1;
    return (1.0 - rho * rho) * ddv + (dm1 / rho - 2.0 * (lambda + 1.0) * rho) * dv -
           (lambda * (lambda + 1.0) + 0.5 * dm1 * potential_Vhat(rho, dim)) * v;
}

int normalization_order(const Dimension& dim, double re_min) {
    return std::max(0, static_cast<int>(std::floor(0.5 * (dim.d() - 1) - re_min)));
}

std::vector<cd> normalized_series_at_one(cd lambda, const Dimension& dim, int order, int J) {
    const LocalEquation eq = local_equation(ExpansionPoint::one, lambda, dim);
    const cd sigma = 0.5 * (dim.d() - 1) - lambda;
    const double lead = 2.0 * (1.0 + dim.c()) * (1.0 + dim.c());
    const int deg = static_cast<int>(std::max({eq.p2.size(), eq.p1.size(), eq.p0.size()})) - 1;
    std::vector<cd> b(order, 0.0);
    // For k <= J the factor (k - sigma) of the indicial polynomial is carried
    // by the coefficients instead of being divided out:
    //   a_k = at_k / prod_{i<=k-1}(i - sigma) and b_k = at_k prod_{i=k+1}^{J}(i - sigma).
    const int top = std::min(J, order - 1);
    std::vector<cd> at(top + 1, 0.0);
    at[0] = 1.0;
    for (int k = 1; k <= top; ++k) {
        cd sum = 0.0;
        for (int j = 1; j <= std::min(k, deg); ++j) {
            const double r = k - j;
            cd w = coef(eq.p2, j) * r * (r - 1.0) + coef(eq.p1, j) * r + coef(eq.p0, j);
            cd prod = 1.0;
            for (int i = k - j + 1; i <= k - 1; ++i) prod *= double(i) - sigma;
            sum += w * at[k - j] * prod;
        }
        at[k] = -sum / (lead * double(k));
    }
    for (int k = 0; k <= top; ++k) {
        cd prod = 1.0;
        for (int i = k + 1; i <= J; ++i) prod *= double(i) - sigma;
        b[k] = at[k] * prod;
    }
    for (int k = top + 1; k < order; ++k) {
        const cd F = eq.indicial(double(k));
        if (std::abs(double(k) - sigma) < 1e-12) {
            std::ostringstream os;
            os << "normalized_series_at_one: resonance at index " << k << " beyond normalization order " << J;
            throw ResonanceError(os.str());
        }
        b[k] = -recurrence_tail(eq, b, k, 0.0) / F;
    }
    return b;
}

ConnectionValue connection(cd lambda, const Dimension& dim, const ConnectionOptions& opt) {
    const double mp = opt.matching_point;
    if (!(mp > opt.seed_offset && mp < 1.0 - opt.seed_offset)) {
        throw std::invalid_argument("connection: matching point must lie between the seed points");
    }
    const int J = opt.normalization >= 0 ? opt.normalization : normalization_order(dim, -1.0);
    const FrobeniusSeries left =
        frobenius_series(ExpansionPoint::zero, Branch::admissible, lambda, dim, std::max(10, opt.order));
    const double r0 = opt.seed_offset, r1 = 1.0 - opt.seed_offset;
    const auto y0 = integrate_spectral(lambda, dim, left.evaluate(r0), r0, mp, opt);

    FrobeniusSeries right;
    right.point = ExpansionPoint::one;
    right.index = 0.0;
    right.coeffs = normalized_series_at_one(lambda, dim, std::max(10, opt.order), J);
    const auto y1 = integrate_spectral(lambda, dim, right.evaluate(r1), r1, mp, opt);

    ConnectionValue cv;
    cv.lambda = lambda;
    cv.matching_point = mp;
    cv.wronskian = y0.first * y1.second - y0.second * y1.first;
    const cd weight = std::pow(mp, double(dim.d() - 1)) *
                      std::pow(cd(1.0 - mp * mp), lambda + 1.0 - 0.5 * (dim.d() - 1));
    cv.normalized = cv.wronskian * weight;
    return cv;
}

std::vector<cd> connection_batch(const std::vector<cd>& lambdas, const Dimension& dim,
                                 const ConnectionOptions& opt, Execution exec) {
    std::vector<cd> out(lambdas.size());
    for_each_index(exec, lambdas.size(), [&](std::size_t i) { out[i] = connection(lambdas[i], dim, opt).normalized; });
    return out;
}

std::vector<cd> shooting_solution(cd lambda, const Dimension& dim, const std::vector<double>& rho,
                                  const ConnectionOptions& opt) {
    const FrobeniusSeries left =
        frobenius_series(ExpansionPoint::zero, Branch::admissible, lambda, dim, std::max(10, opt.order));
    std::vector<cd> out(rho.size());
    double at = opt.seed_offset;
    auto state = left.evaluate(at);
    for (size_t i = 0; i < rho.size(); ++i) {
        if (i > 0 && rho[i] < rho[i - 1]) throw std::invalid_argument("shooting_solution: points must increase");
        if (rho[i] <= opt.seed_offset) {
            out[i] = left.evaluate(rho[i]).first;
            continue;
        }
        state = integrate_spectral(lambda, dim, state, at, rho[i], opt);
        at = rho[i];
        out[i] = state.first;
    }
    return out;
}

SearchRegion parse_region(const std::string& s) {
    SearchRegion r;
    r.excluded.clear();
    bool have_re = false, have_abs = false;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.rfind("re>=", 0) == 0) {
            r.re_min = std::stod(item.substr(4));
            have_re = true;
        } else if (item.rfind("abs<=", 0) == 0) {
            r.radius = std::stod(item.substr(5));
            have_abs = true;
        } else if (item.rfind("exclude=", 0) == 0) {
            const std::string spec = item.substr(8);
            const auto colon = spec.find(':');
            if (colon == std::string::npos) throw std::invalid_argument("region: exclude needs center:radius");
            std::string center = spec.substr(0, colon);
            double re = 0.0, im = 0.0;
            if (!center.empty() && center.back() == 'i') {
                center.pop_back();
                size_t pos = center.find_last_of("+-");
                if (pos == 0 || pos == std::string::npos) {
                    im = std::stod(center.empty() ? "0" : center);
                } else {
                    re = std::stod(center.substr(0, pos));
                    im = std::stod(center.substr(pos));
                }
            } else {
                re = std::stod(center);
            }
            r.excluded.push_back({cd(re, im), std::stod(spec.substr(colon + 1))});
        } else {
            throw std::invalid_argument("region: unrecognized item '" + item + "'");
        }
    }
    if (!have_re || !have_abs) throw std::invalid_argument("region: expected 're>=A,abs<=R'");
    if (!(r.radius > 0.0) || r.re_min >= r.radius) throw std::invalid_argument("region: empty search region");
    return r;
}

std::string to_string(const SearchRegion& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "re>=%.17g,abs<=%.17g", r.re_min, r.radius);
    std::string s = buf;
    for (const auto& d : r.excluded) {
        std::snprintf(buf, sizeof buf, ",exclude=%.17g%+.17gi:%.17g", d.center.real(), d.center.imag(), d.radius);
        s += buf;
    }
    return s;
}

namespace {

struct Contour {
    // Maps s in [0, 1] to a point on a closed positively oriented curve.
    std::function<cd(double)> at;
    int sign;  // +1 outer boundary, -1 excluded disk
};

std::vector<Contour> region_contours(const SearchRegion& region) {
    std::vector<Contour> out;
    const double R = region.radius, a = region.re_min;
    if (a <= -R) {
        out.push_back({[R](double s) { return std::polar(R, 2.0 * M_PI * s); }, 1});
    } else {
        const double th = std::acos(a / R);
        const double arc = 2.0 * th * R;
        const double seg = 2.0 * R * std::sin(th);
        const double total = arc + seg;
        out.push_back({[=](double s) {
                           const double l = s * total;
                           if (l <= arc) return std::polar(R, -th + l / R);
                           const double y = R * std::sin(th) - (l - arc);
                           return cd(a, y);
                       },
                       1});
    }
    for (const auto& d : region.excluded) {
        out.push_back({[d](double s) { return d.center + std::polar(d.radius, 2.0 * M_PI * s); }, -1});
    }
    return out;
}

bool in_region(cd z, const SearchRegion& region, double tol) {
    if (std::abs(z) > region.radius + tol || z.real() < region.re_min - tol) return false;
    for (const auto& d : region.excluded)
        if (std::abs(z - d.center) < d.radius - tol) return false;
    return true;
}

}  // namespace

int winding_number(const SearchRegion& region, const Dimension& dim, const SearchOptions& opt, double* bmax,
                   double* bmin, std::vector<WSample>* samples, int* evaluations) {
    ConnectionOptions copt = opt.connection;
    if (copt.normalization < 0) copt.normalization = normalization_order(dim, region.re_min);
    double total = 0.0, mx = 0.0, mn = std::numeric_limits<double>::infinity();
    int evals = 0;
    for (const auto& contour : region_contours(region)) {
        const int M = contour.sign > 0 ? opt.boundary_points : std::max(64, opt.boundary_points / 4);
        std::vector<double> s(M + 1);
        std::vector<cd> z(M + 1);
        for (int i = 0; i <= M; ++i) {
            s[i] = double(i) / M;
            z[i] = contour.at(s[i]);
        }
        std::vector<cd> w = connection_batch(std::vector<cd>(z.begin(), z.end() - 1), dim, copt, opt.exec);
        evals += M;
        w.push_back(w.front());
        // Refine until consecutive samples differ in argument by at most pi/8.
        std::vector<std::pair<double, cd>> pts;
        for (int i = 0; i <= M; ++i) pts.push_back({s[i], w[i]});
        for (int pass = 0; pass < 30; ++pass) {
            std::vector<double> mids;
            for (size_t i = 0; i + 1 < pts.size(); ++i) {
                if (std::abs(std::arg(pts[i + 1].second / pts[i].second)) > M_PI / 8.0 &&
                    pts[i + 1].first - pts[i].first > 1e-12) {
                    mids.push_back(0.5 * (pts[i].first + pts[i + 1].first));
                }
            }
            if (mids.empty()) break;
            std::vector<cd> mz;
            for (double m : mids) mz.push_back(contour.at(m));
            const auto mw = connection_batch(mz, dim, copt, opt.exec);
            evals += static_cast<int>(mz.size());
            for (size_t i = 0; i < mids.size(); ++i) pts.push_back({mids[i], mw[i]});
            std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        double acc = 0.0;
        for (size_t i = 0; i + 1 < pts.size(); ++i) acc += std::arg(pts[i + 1].second / pts[i].second);
        total += contour.sign * acc;
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            const double a = std::abs(pts[i].second);
            mx = std::max(mx, a);
            mn = std::min(mn, a);
            if (samples) samples->push_back({contour.at(pts[i].first), a});
        }
    }
    if (bmax) *bmax = mx;
    if (bmin) *bmin = mn;
    if (evaluations) *evaluations += evals;
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

SpectrumReport find_eigenvalues(const SearchRegion& region, const Dimension& dim, const SearchOptions& opt) {
    SpectrumReport rep;
    rep.region = region;
    rep.dimension = dim.d();
    ConnectionOptions copt = opt.connection;
    if (copt.normalization < 0) copt.normalization = normalization_order(dim, region.re_min);
    SearchOptions wopt = opt;
    wopt.connection = copt;
    rep.winding_count =
        winding_number(region, dim, wopt, &rep.boundary_max, &rep.boundary_min, &rep.boundary_samples, &rep.evaluations);

    std::vector<cd> seeds;
    const double hs = opt.seed_spacing;
    const int span = static_cast<int>(std::ceil(region.radius / hs));
    for (int i = 0; i <= 2 * span; ++i) {
        const double re = region.re_min + i * hs;
        for (int j = -span; j <= span; ++j) {
            const cd z(re, j * hs);
            if (in_region(z, region, 0.0)) seeds.push_back(z);
        }
    }
    rep.seeds = static_cast<int>(seeds.size());

    struct Outcome {
        cd z;
        double residual;
        bool ok;
        int evals;
    };
    std::vector<Outcome> outcomes(seeds.size());
    const double scale = rep.boundary_max > 0.0 ? rep.boundary_max : 1.0;
    for_each_index(opt.exec, seeds.size(), [&](std::size_t idx) {
        cd z = seeds[idx];
        Outcome o{z, 0.0, false, 0};
        try {
            for (int it = 0; it < 60; ++it) {
                const cd w = connection(z, dim, copt).normalized;
                const double h = opt.newton_fd_step;
                const cd dw = (connection(z + h, dim, copt).normalized - connection(z - h, dim, copt).normalized) / (2.0 * h);
                o.evals += 3;
                if (dw == 0.0) break;
                const cd step = w / dw;
                z -= step;
                if (!in_region(z, region, 1.0)) break;
                if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z))) break;
            }
            const cd w = connection(z, dim, copt).normalized;
            o.evals += 1;
            o.z = z;
            o.residual = std::abs(w) / scale;
            o.ok = in_region(z, region, 1e-9) && o.residual < opt.root_tol;
        } catch (const std::exception&) {
            o.ok = false;
        }
        outcomes[idx] = o;
    });
    for (const auto& o : outcomes) {
        rep.evaluations += o.evals;
        if (!o.ok) continue;
        bool dup = false;
        for (const auto& e : rep.eigenvalues) dup = dup || std::abs(e.value - o.z) < opt.dedupe;
        if (!dup) rep.eigenvalues.push_back({o.z, o.residual});
    }
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](const auto& a, const auto& b) {
        return a.value.real() != b.value.real() ? a.value.real() < b.value.real() : a.value.imag() < b.value.imag();
    });
    rep.consistent = static_cast<int>(rep.eigenvalues.size()) == rep.winding_count;
    return rep;
}

namespace {

std::vector<std::complex<long double>> collocation_eigenvalues(const Dimension& dim, int n) {
    const MatrixX<long double> L = assemble_operator<long double>(n, dim, true);
    Eigen::EigenSolver<MatrixX<long double>> es(L, false);
    const auto& ev = es.eigenvalues();
    return std::vector<std::complex<long double>>(ev.data(), ev.data() + ev.size());
}

}  // namespace

std::vector<CollocationEigenvalue> collocation_spectrum(const Dimension& dim, int n) {
    if (n < 32) throw std::invalid_argument("collocation_spectrum: n must be >= 32");
    const auto coarse = collocation_eigenvalues(dim, n);
    const auto fine = collocation_eigenvalues(dim, 2 * n);
    std::vector<CollocationEigenvalue> out;
    for (const auto& z : coarse) {
        long double best = std::numeric_limits<long double>::infinity();
        for (const auto& w : fine) best = std::min(best, std::abs(z - w));
        out.push_back({cd(double(z.real()), double(z.imag())), best < 1e-4L});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.value.real() != b.value.real() ? a.value.real() > b.value.real() : a.value.imag() > b.value.imag();
    });
    return out;
}

CollocationGaugeCheck collocation_gauge_check(const Dimension& dim, int n) {
    const RadialGrid grid = build_grid(n, dim);
    const GaugeProjection p = build_gauge_projection(grid);
    const GaugeMode g = gauge_mode(dim);
    Eigen::VectorXd exact(2 * n);
    for (int j = 0; j < n; ++j) {
        exact[j] = g.g1(grid.rho[j]);
        exact[n + j] = g.g2(grid.rho[j]);
    }
    const double scale = exact.dot(p.right_mode) / p.right_mode.squaredNorm();
    const double err = (scale * p.right_mode - exact).cwiseAbs().maxCoeff() / exact.cwiseAbs().maxCoeff();
    return {p.eigenvalue, err};
}

double default_kernel_anchor(const Dimension& dim) { return dim.d() == 3 ? 0.5 : 1.0; }

double kernel_second_branch(double rho, const Dimension& dim, double rho1) {
    const double c = dim.c();
    const int d = dim.d();
    auto integrand = [&](double x) {
        const double q = x * x + c;
        return std::pow(1.0 - x * x, 0.5 * (d - 5)) * std::pow(x, -d - 1) * q * q;
    };
    const Integral I = rho <= rho1 ? Integral{-integrate(integrand, rho, rho1, 1e-14).value, 0.0, true}
                                   : integrate(integrand, rho1, rho, 1e-14);
    return I.value / (rho * rho + c);
}

KernelSecondSolution kernel_second_solution(const Dimension& dim, const std::vector<double>& rho) {
    KernelSecondSolution out;
    out.rho = rho;
    const double anchor = default_kernel_anchor(dim);
    for (double r : rho) out.values.push_back(kernel_second_branch(r, dim, anchor));
    // Leading power from two small radii.
    const double a = 1e-3, b = 2e-3;
    const double va = std::abs(kernel_second_branch(a, dim, anchor));
    const double vb = std::abs(kernel_second_branch(b, dim, anchor));
    out.leading_power = std::log(vb / va) / std::log(b / a);
    return out;
}

}  // namespace wmlab
