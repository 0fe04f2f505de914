#include "wmlab/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wmlab/profiles.hpp"

namespace wmlab {

Eigen::VectorXd State::stacked() const {
    Eigen::VectorXd v(2 * n());
    v << phi1, phi2;
    return v;
}

State State::from_stacked(const Eigen::VectorXd& v, double tau) {
    const Eigen::Index n = v.size() / 2;
    return {v.head(n), v.tail(n), tau};
}

State apply_L0(const State& s, const RadialGrid& grid) {
    const int n = grid.n;
    const double d = grid.dim.d();
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(grid.x.data(), n);
    Eigen::VectorXd dp1 = grid.Dx * s.phi1;
    Eigen::VectorXd dp2 = grid.Dx * s.phi2;
    Eigen::VectorXd ddp1 = grid.Dx2 * s.phi1;
    State out = s;
    out.phi1 = -2.0 * x.cwiseProduct(dp1) - s.phi1 + s.phi2;
    out.phi2 = 4.0 * x.cwiseProduct(ddp1) + 2.0 * (d + 2.0) * dp1 - 2.0 * x.cwiseProduct(dp2) - 2.0 * s.phi2;
    return out;
}

State apply_Lprime(const State& s, const RadialGrid& grid) {
    State out = State::zero(grid.n);
    out.tau = s.tau;
    const double k = -0.5 * (grid.dim.d() - 1);
    for (int j = 0; j < grid.n; ++j) out.phi2[j] = k * potential_V(grid.rho[j], grid.dim) * s.phi1[j];
    return out;
}

State apply_N(const State& s, const RadialGrid& grid, Execution exec) {
    State out = State::zero(grid.n);
    out.tau = s.tau;
    nhat_grid(exec, grid.rho, s.phi1, grid.dim, out.phi2);
    return out;
}

GaugeProjection build_gauge_projection(const RadialGrid& grid) {
    using LD = long double;
    const int n = grid.n;
    const MatrixX<LD> L = assemble_operator<LD>(n, grid.dim, true);

    auto closest_to_one = [](const auto& values) {
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < values.size(); ++i) {
            if (std::abs(values[i] - LD(1)) < std::abs(values[best] - LD(1))) best = i;
        }
        return best;
    };

    Eigen::EigenSolver<MatrixX<LD>> right_solver(L);
    const auto& rv = right_solver.eigenvalues();
    const Eigen::Index ir = closest_to_one(rv);
    if (std::abs(rv[ir] - LD(1)) > LD(1e-3)) {
        throw std::runtime_error("build_gauge_projection: no discrete eigenvalue within 1e-3 of 1");
    }
    Eigen::EigenSolver<MatrixX<LD>> left_solver(L.transpose());
    const auto& lv = left_solver.eigenvalues();
    const Eigen::Index il = closest_to_one(lv);
    if (std::abs(lv[il] - LD(1)) > LD(1e-3)) {
        throw std::runtime_error("build_gauge_projection: adjoint has no eigenvalue within 1e-3 of 1");
    }

    const Eigen::Matrix<std::complex<LD>, Eigen::Dynamic, 1> rvec = right_solver.eigenvectors().col(ir);
    const Eigen::Matrix<std::complex<LD>, Eigen::Dynamic, 1> lvec = left_solver.eigenvectors().col(il);
    const std::complex<LD> r0 = rvec[0];
    Eigen::Index lmax = 0;
    for (Eigen::Index i = 1; i < lvec.size(); ++i)
        if (std::abs(lvec[i]) > std::abs(lvec[lmax])) lmax = i;
    const std::complex<LD> l0 = lvec[lmax];
    const LD g10 = LD(1) / LD(grid.dim.d() - 2);

    GaugeProjection p;
    p.right_mode.resize(2 * n);
    p.left_mode.resize(2 * n);
    Eigen::Matrix<LD, Eigen::Dynamic, 1> r(2 * n), l(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        r[i] = (rvec[i] / r0).real() * g10;
        l[i] = (lvec[i] / l0).real();
    }
    const LD norm = l.dot(r);
    l /= norm;
    for (int i = 0; i < 2 * n; ++i) {
        p.right_mode[i] = static_cast<double>(r[i]);
        p.left_mode[i] = static_cast<double>(l[i]);
    }
    p.normalization = static_cast<double>(norm);
    p.eigenvalue = static_cast<double>(rv[ir].real());
    return p;
}

std::string to_string(GaugeHandling g) {
    switch (g) {
        case GaugeHandling::none: return "none";
        case GaugeHandling::project: return "project";
        case GaugeHandling::adjust_T: return "adjust_T";
    }
    return "none";
}

GaugeHandling gauge_handling_from_string(const std::string& s) {
    if (s == "none") return GaugeHandling::none;
    if (s == "project") return GaugeHandling::project;
    if (s == "adjust_T") return GaugeHandling::adjust_T;
    throw std::invalid_argument("gauge handling must be one of none|project|adjust_T, got '" + s + "'");
}

double effective_dtau(const EvolutionConfig& cfg) {
    const double target = cfg.dtau > 0.0 ? cfg.dtau : cfg.cfl / (double(cfg.n) * cfg.n);
    const double steps = std::max(1.0, std::ceil(cfg.tau_max / target - 1e-9));
    return cfg.tau_max / steps;
}

DecayFit fit_log_linear(const std::vector<double>& t, const std::vector<double>& y, double t0, double t1) {
    DecayFit fit;
    std::vector<double> ts, ls;
    for (size_t i = 0; i < t.size() && i < y.size(); ++i) {
        if (t[i] < t0 - 1e-12 || t[i] > t1 + 1e-12) continue;
        if (!(y[i] > 0.0) || !std::isfinite(y[i])) return fit;
        ts.push_back(t[i]);
        ls.push_back(std::log(y[i]));
    }
    const size_t m = ts.size();
    if (m < 3) return fit;
    double st = 0, sl = 0;
    for (size_t i = 0; i < m; ++i) st += ts[i], sl += ls[i];
    const double mt = st / m, ml = sl / m;
    double stt = 0, stl = 0;
    for (size_t i = 0; i < m; ++i) {
        stt += (ts[i] - mt) * (ts[i] - mt);
        stl += (ts[i] - mt) * (ls[i] - ml);
    }
    fit.rate = stl / stt;
    fit.intercept = ml - fit.rate * mt;
    double ss = 0;
    for (size_t i = 0; i < m; ++i) {
        const double e = ls[i] - (fit.intercept + fit.rate * ts[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / m);
    fit.defined = std::isfinite(fit.rate);
    return fit;
}

Evolver::Evolver(const EvolutionConfig& cfg)
    : cfg_(cfg),
      dim_(cfg.d),
      grid_(build_grid(cfg.n, dim_)),
      L_(assemble_operator<double>(cfg.n, dim_, cfg.include_Lprime)) {
    if (!(cfg.tau_max > 0.0)) throw std::invalid_argument("tau_max must be positive");
    if (!(cfg.delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (cfg.gauge != GaugeHandling::none || cfg.include_Lprime) proj_ = build_gauge_projection(grid_);
}

Eigen::VectorXd Evolver::nonlinear_term(const Eigen::VectorXd& u) const {
    const int n = grid_.n;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n);
    Eigen::VectorXd phi1 = u.head(n), nh;
    nhat_grid(cfg_.exec, grid_.rho, phi1, dim_, nh);
    out.tail(n) = nh;
    return out;
}

Eigen::VectorXd Evolver::rhs(const Eigen::VectorXd& u) const {
    Eigen::VectorXd out;
    matvec(cfg_.exec, L_, u, out);
    if (cfg_.nonlinear) out += nonlinear_term(u);
    return out;
}

State Evolver::step_rk4(const State& s, double h) const {
    const Eigen::VectorXd u = s.stacked();
    const Eigen::VectorXd k1 = rhs(u);
    const Eigen::VectorXd k2 = rhs(u + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(u + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(u + h * k3);
    return State::from_stacked(u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), s.tau + h);
}

State step_rk4(const State& s, const Evolver& ev) { return ev.step_rk4(s, effective_dtau(ev.config())); }

double state_norm(const State& s, const RadialGrid& grid) {
    const int m = grid.dim.m();
    double h2 = 0.0;
    for (int k = 0; k <= m; ++k) h2 += std::pow(sobolev_seminorm(s.phi1, k, 1.0, grid), 2);
    for (int k = 0; k <= m - 1; ++k) h2 += std::pow(sobolev_seminorm(s.phi2, k, 1.0, grid), 2);
    return std::sqrt(h2);
}

void Evolver::record(TrajectoryRecord& tr, double tau, const Eigen::VectorXd& phi) const {
    const int n = grid_.n;
    const int m = dim_.m();
    const Eigen::VectorXd p1 = phi.head(n), p2 = phi.tail(n);
    std::vector<double> row(1, 0.0);
    double h2 = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double v = sobolev_seminorm(p1, k, 1.0, grid_);
        row.push_back(v);
        h2 += v * v;
    }
    for (int k = 0; k <= m - 1; ++k) {
        const double v = sobolev_seminorm(p2, k, 1.0, grid_);
        row.push_back(v);
        h2 += v * v;
    }
    row[0] = std::sqrt(h2);
    tr.times.push_back(tau);
    tr.norms.push_back(std::move(row));
    tr.gauge_amplitude.push_back(proj_.left_mode.size() ? proj_.amplitude(phi) : 0.0);
    tr.origin_phi1.push_back(phi[0]);
}

void Evolver::finish(TrajectoryRecord& tr) const {
    const double t0 = cfg_.fit_start >= 0.0 ? cfg_.fit_start : 0.5 * cfg_.tau_max;
    const double t1 = cfg_.fit_end >= 0.0 ? cfg_.fit_end : cfg_.tau_max;
    tr.order_fits.clear();
    for (size_t c = 0; c < tr.norm_labels.size(); ++c) {
        std::vector<double> col;
        for (const auto& r : tr.norms) col.push_back(r[c]);
        tr.order_fits.push_back(fit_log_linear(tr.times, col, t0, t1));
    }
    tr.decay_fit = tr.order_fits.empty() ? DecayFit{} : tr.order_fits[0];
}

TrajectoryRecord Evolver::evolve(const State& initial) const {
    const int n = grid_.n;
    const int m = dim_.m();
    if (initial.n() != n) throw std::invalid_argument("evolve: initial state does not match grid size");
    const double h = effective_dtau(cfg_);
    const long steps = std::lround(cfg_.tau_max / h);
    const long stride = std::max(1L, std::lround(cfg_.record_every / h));
    const bool gauged = cfg_.gauge != GaugeHandling::none;
    const Eigen::VectorXd u0 = initial.stacked();
    const Eigen::VectorXd& r = proj_.right_mode;

    TrajectoryRecord tr;
    tr.dtau = h;
    tr.norm_labels.push_back("H");
    for (int k = 0; k <= m; ++k) tr.norm_labels.push_back("phi1_k" + std::to_string(k));
    for (int k = 0; k <= m - 1; ++k) tr.norm_labels.push_back("phi2_k" + std::to_string(k));

    // a(tau) at full steps; zero except in adjust_T mode.
    std::vector<double> a(steps + 1, 0.0);
    const int sweeps = cfg_.gauge == GaugeHandling::adjust_T ? std::max(1, cfg_.picard_max) : 1;

    for (int sweep = 0; sweep < sweeps; ++sweep) {
        TrajectoryRecord cur;
        cur.dtau = h;
        cur.norm_labels = tr.norm_labels;
        Eigen::VectorXd x = gauged ? proj_.complement(u0) : u0;

        auto full = [&](const Eigen::VectorXd& xv, double av) -> Eigen::VectorXd {
            return cfg_.gauge == GaugeHandling::adjust_T ? Eigen::VectorXd(xv + av * r) : xv;
        };
        auto field = [&](const Eigen::VectorXd& xv, double av) -> Eigen::VectorXd {
            if (!gauged) return rhs(xv);
            Eigen::VectorXd lx;
            matvec(cfg_.exec, L_, xv, lx);
            if (cfg_.nonlinear) lx += nonlinear_term(full(xv, av));
            return proj_.complement(lx);
        };
        auto p_of = [&](const Eigen::VectorXd& phi) {
            return (cfg_.nonlinear && proj_.left_mode.size()) ? proj_.amplitude(nonlinear_term(phi)) : 0.0;
        };

        Eigen::VectorXd phi = full(x, a[0]);
        cur.step_times.push_back(0.0);
        cur.step_p.push_back(p_of(phi));
        record(cur, 0.0, phi);
        for (long k = 0; k < steps; ++k) {
            const double am = 0.5 * (a[k] + a[k + 1]);
            const Eigen::VectorXd k1 = field(x, a[k]);
            const Eigen::VectorXd k2 = field(x + 0.5 * h * k1, am);
            const Eigen::VectorXd k3 = field(x + 0.5 * h * k2, am);
            const Eigen::VectorXd k4 = field(x + h * k3, a[k + 1]);
            x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (gauged) x = proj_.complement(x);
            const double tau = (k + 1) * h;
            phi = full(x, a[k + 1]);
            const double sup = phi.cwiseAbs().maxCoeff();
            if (!std::isfinite(sup) || sup > cfg_.divergence_threshold) {
                cur.diverged = true;
                cur.divergence_tau = tau;
                cur.event = "blowup of perturbation";
                break;
            }
            cur.step_times.push_back(tau);
            cur.step_p.push_back(p_of(phi));
            if ((k + 1) % stride == 0 || k + 1 == steps) record(cur, tau, phi);
        }
        cur.final_state = State::from_stacked(phi, cur.step_times.back());
        cur.picard_iterations = sweep + 1;

        if (cfg_.gauge != GaugeHandling::adjust_T || cur.diverged) {
            tr = std::move(cur);
            break;
        }
        // a(tau) = -int_tau^inf e^{tau - s} p(s) ds, with p frozen beyond tau_max.
        std::vector<double> na(steps + 1, 0.0);
        const auto& p = cur.step_p;
        na[steps] = -p[steps];
        const double e = std::exp(-h);
        for (long k = steps - 1; k >= 0; --k) {
            na[k] = e * na[k + 1] - 0.5 * h * (p[k] + e * p[k + 1]);
        }
        double change = 0.0, scale = 0.0;
        for (long k = 0; k <= steps; ++k) {
            change = std::max(change, std::abs(na[k] - a[k]));
            scale = std::max(scale, std::abs(na[k]));
        }
        a = std::move(na);
        cur.adjustment = a;
        cur.picard_change = change;
        tr = std::move(cur);
        if (change <= cfg_.picard_tol * std::max(1.0, scale) + 1e-300) break;
    }
    finish(tr);
    return tr;
}

TrajectoryRecord evolve(const State& initial, const EvolutionConfig& cfg) {
    return Evolver(cfg).evolve(initial);
}

CorrectionTerm correction_term(const TrajectoryRecord& tr, const State& initial, const GaugeProjection& proj) {
    CorrectionTerm out;
    double integral = 0.0, sup = 0.0;
    const auto& t = tr.step_times;
    const auto& p = tr.step_p;
    for (size_t k = 0; k + 1 < t.size(); ++k) {
        integral += 0.5 * (t[k + 1] - t[k]) * (std::exp(-t[k]) * p[k] + std::exp(-t[k + 1]) * p[k + 1]);
    }
    for (double v : p) sup = std::max(sup, std::abs(v));
    out.value = proj.amplitude(initial.stacked()) + integral;
    out.tail_bound = t.empty() ? 0.0 : std::exp(-t.back()) * sup;
    out.tail_warning = out.tail_bound > 0.01 * std::abs(out.value);
    return out;
}

DataPair profile_shift_data(double T1, double T0, const Dimension& dim) {
    DataPair v;
    v.F = [=](double r) { return f0(r / T1, dim) - f0(r / T0, dim); };
    v.G = [=](double r) {
        return f0_prime(r / T1, dim) * r / (T1 * T1) - f0_prime(r / T0, dim) * r / (T0 * T0);
    };
    v.F_over_r = [=](double r) { return f0_over_rho(r / T1, dim) / T1 - f0_over_rho(r / T0, dim) / T0; };
    v.G_over_r = [=](double r) { return f0_prime(r / T1, dim) / (T1 * T1) - f0_prime(r / T0, dim) / (T0 * T0); };
    return v;
}

const std::vector<std::string>& perturbation_shapes() {
    static const std::vector<std::string> shapes{"gaussian", "cubic", "profile_shift"};
    return shapes;
}

DataPair perturbation_data(const std::string& shape, double A, double T0, const Dimension& dim) {
    DataPair v;
    if (shape == "gaussian") {
        v.F = [A](double r) { return A * r * std::exp(-r * r); };
        v.G = v.F;
        v.F_over_r = [A](double r) { return A * std::exp(-r * r); };
        v.G_over_r = v.F_over_r;
    } else if (shape == "cubic") {
        v.F = [A](double r) { return A * r * r * r; };
        v.G = [](double) { return 0.0; };
        v.F_over_r = [A](double r) { return A * r * r; };
        v.G_over_r = v.G;
    } else if (shape == "profile_shift") {
        v = profile_shift_data(T0 * (1.0 + A), T0, dim);
    } else {
        throw std::invalid_argument("unknown perturbation shape '" + shape + "' (gaussian|cubic|profile_shift)");
    }
    return v;
}

SelectTResult select_T(const DataPair& v, const ConeFrame& frame, const EvolutionConfig& cfg_in) {
    EvolutionConfig cfg = cfg_in;
    cfg.gauge = GaugeHandling::adjust_T;
    const Evolver ev(cfg);
    SelectTResult res;
    auto functional = [&](double T) {
        ++res.evaluations;
        const State u = initial_data_U(v, T, frame, ev.grid());
        const TrajectoryRecord tr = ev.evolve(u);
        if (tr.diverged) throw std::runtime_error("select_T: adjusted evolution diverged");
        return correction_term(tr, u, ev.projection()).value;
    };
    double lo = frame.T0 - frame.delta, hi = frame.T0 + frame.delta;
    double flo = functional(lo), fhi = functional(hi);
    res.f_low = flo;
    res.f_high = fhi;
    if (flo == 0.0) return res.T = lo, res.functional = 0.0, res;
    if (fhi == 0.0) return res.T = hi, res.functional = 0.0, res;
    if ((flo > 0) == (fhi > 0)) {
        throw BracketError("select_T: correction functional has no sign change on [T0 - delta, T0 + delta]");
    }
    // Secant steps safeguarded by bisection; the bracket always holds a sign change.
    double a = lo, fa = flo, b = hi, fb = fhi;
    double T = 0.5 * (a + b), fT = 0.0;
    for (int it = 0; it < 100; ++it) {
        double cand = b - fb * (b - a) / (fb - fa);
        if (!(cand > std::min(a, b) && cand < std::max(a, b))) cand = 0.5 * (a + b);
        const double prev = T;
        T = cand;
        fT = functional(T);
        if ((fT > 0) == (fa > 0)) {
            a = T, fa = fT;
            fb *= 0.5;  // Illinois modification against one-sided stagnation
        } else {
            b = T, fb = fT;
            fa *= 0.5;
        }
        if (std::abs(fT) < 1e-15 || std::abs(T - prev) < 1e-13 * frame.T0 ||
            std::abs(b - a) < 1e-13 * frame.T0) {
            break;
        }
    }
    res.T = T;
    res.functional = fT;
    return res;
}

BlowupEstimate estimate_blowup_time(const std::vector<double>& t, const std::vector<double>& psi_r) {
    BlowupEstimate est;
    const size_t m = std::min(t.size(), psi_r.size());
    if (m < 2) return est;
    std::vector<double> y(m);
    bool monotone = true;
    for (size_t i = 0; i < m; ++i) {
        y[i] = 1.0 / psi_r[i];
        if (i > 0 && !(y[i] < y[i - 1] && t[i] > t[i - 1])) monotone = false;
    }
    double st = 0, sy = 0;
    for (size_t i = 0; i < m; ++i) st += t[i], sy += y[i];
    const double mt = st / m, my = sy / m;
    double stt = 0, sty = 0, syy = 0;
    for (size_t i = 0; i < m; ++i) {
        stt += (t[i] - mt) * (t[i] - mt);
        sty += (t[i] - mt) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sty / stt;
    const double icpt = my - slope * mt;
    double ss = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double e = y[i] - (icpt + slope * t[i]);
        ss += e * e;
    }
    est.T = -icpt / slope;
    est.residual = syy > 0 ? std::sqrt(ss / syy) : std::sqrt(ss);
    est.reliable = monotone && std::isfinite(est.T);
    return est;
}

std::pair<std::vector<double>, std::vector<double>> origin_gradient_series(
    const TrajectoryRecord& tr, double T, const Dimension& dim, double tau_from, double tau_to) {
    std::vector<double> ts, gs;
    const double base = f0_over_rho(0.0, dim);
    for (size_t i = 0; i < tr.times.size(); ++i) {
        const double tau = tr.times[i];
        if (tau < tau_from - 1e-12 || tau > tau_to + 1e-12) continue;
        ts.push_back(-T * std::expm1(-tau));
        gs.push_back((base + tr.origin_phi1[i]) * std::exp(tau) / T);
    }
    return {ts, gs};
}

}  // namespace wmlab
