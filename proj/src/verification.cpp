#include "wmlab/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wmlab/appendix.hpp"
#include "wmlab/evolution.hpp"
#include "wmlab/profiles.hpp"
#include "wmlab/spectrum.hpp"

namespace wmlab {

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CriterionResult start(int id) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    return r;
}

void metric(CriterionResult& r, const std::string& key, double value) { r.metrics.emplace_back(key, value); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// Smooth even state: polynomials of degree < 5 in x = rho^2 with coefficients in [-1, 1].
State random_state(Rng& rng, const RadialGrid& grid) {
    State s = State::zero(grid.n);
    double a[5], b[5];
    for (int i = 0; i < 5; ++i) a[i] = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) b[i] = rng.uniform(-1.0, 1.0);
    for (int j = 0; j < grid.n; ++j) {
        double p = 1.0;
        for (int i = 0; i < 5; ++i) {
            s.phi1[j] += a[i] * p;
            s.phi2[j] += b[i] * p;
            p *= grid.x[j];
        }
    }
    return s;
}

State gauge_state(const RadialGrid& grid) {
    const GaugeMode g = gauge_mode(grid.dim);
    State s = State::zero(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        s.phi1[j] = g.g1(grid.rho[j]);
        s.phi2[j] = g.g2(grid.rho[j]);
    }
    return s;
}

Table trajectory_table(const std::string& name, const TrajectoryRecord& tr) {
    Table t;
    t.name = name;
    t.header.push_back("tau");
    t.header.insert(t.header.end(), tr.norm_labels.begin(), tr.norm_labels.end());
    t.header.push_back("gauge_amplitude");
    for (size_t i = 0; i < tr.times.size(); ++i) {
        std::vector<double> row{tr.times[i]};
        row.insert(row.end(), tr.norms[i].begin(), tr.norms[i].end());
        row.push_back(tr.gauge_amplitude[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

std::string criterion_name(int id) {
    static const char* names[] = {"profile correctness", "gauge eigenpair",   "spectral gap",
                                  "unstable-mode rate",  "free decay",        "stable decay",
                                  "T recovery",          "norm scaling",      "nonlinearity",
                                  "appendix",            "determinism"};
    if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id must be in 1..11");
    return names[id - 1];
}

CriterionResult check_profile_residual(const VerifyOptions& opt) {
    Stopwatch sw;
    CriterionResult r = start(1);
    Rng rng(opt.seed ^ 0x01);
    const double T = 1.0;
    double worst = 0.0;
    Table tab{"profile_residual", {"d", "t", "r", "residual"}, {}};
    for (int d : {3, 5, 7, 9}) {
        const Dimension dim(d);
        double dworst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double t = rng.uniform(0.0, 0.9 * T);
            const double rr = (T - t) * rng.uniform(1e-3, 1.0);
            const double res = std::abs(profile_residual(t, rr, T, dim));
            dworst = std::max(dworst, res);
            tab.rows.push_back({double(d), t, rr, res});
        }
        metric(r, "max_residual_d" + std::to_string(d), dworst);
        worst = std::max(worst, dworst);
    }
    r.tables.push_back(std::move(tab));
    r.seconds = sw.seconds();
    r.passed = worst < 1e-10 && r.seconds < 1.0;
    r.detail = "max residual " + fmt(worst) + " over 50 cone points per d (limit 1e-10, runtime < 1 s)";
    return r;
}

CriterionResult check_gauge_eigenpair(const VerifyOptions& opt) {
    Stopwatch sw;
    CriterionResult r = start(2);
    bool ok = true;
    double worst_w = 0.0, worst_eig = 0.0, worst_vec = 0.0;
    for (int d : {3, 5, 7, 9}) {
        Stopwatch dw;
        const Dimension dim(d);
        const ConnectionValue w = connection(cd(1.0, 0.0), dim);
        const CollocationGaugeCheck col = collocation_gauge_check(dim, opt.collocation_n);
        const double aw = std::abs(w.normalized);
        const double de = std::abs(col.eigenvalue - 1.0);
        const double t = dw.seconds();
        metric(r, "abs_W1_d" + std::to_string(d), aw);
        metric(r, "eigenvalue_error_d" + std::to_string(d), de);
        metric(r, "eigenvector_error_d" + std::to_string(d), col.eigenvector_error);
        ok = ok && aw < 1e-9 && de < 1e-6 && col.eigenvector_error < 1e-6 && t < 30.0;
        worst_w = std::max(worst_w, aw);
        worst_eig = std::max(worst_eig, de);
        worst_vec = std::max(worst_vec, col.eigenvector_error);
    }
    r.seconds = sw.seconds();
    r.passed = ok;
    r.detail = "max |W(1)| " + fmt(worst_w) + ", max |lambda-1| " + fmt(worst_eig) + ", max eigenvector error " +
               fmt(worst_vec) + " (n=" + std::to_string(opt.collocation_n) + ")";
    return r;
}

CriterionResult check_spectral_gap(const VerifyOptions& opt) {
    Stopwatch sw;
    CriterionResult r = start(3);
    const SearchRegion region = parse_region("re>=0,abs<=15");
    SearchOptions so;
    so.exec = opt.exec;
    bool ok = true;
    Table tab{"spectral_gap_roots", {"d", "re", "im", "residual", "winding"}, {}};
    std::string detail;
    for (int d : {3, 5, 7}) {
        const SpectrumReport rep = find_eigenvalues(region, Dimension(d), so);
        const std::string tag = "_d" + std::to_string(d);
        metric(r, "winding" + tag, rep.winding_count);
        metric(r, "roots" + tag, double(rep.eigenvalues.size()));
        double err = std::numeric_limits<double>::infinity();
        if (rep.eigenvalues.size() == 1) err = std::abs(rep.eigenvalues[0].value - cd(1.0, 0.0));
        metric(r, "root_error" + tag, err);
        for (const auto& e : rep.eigenvalues) {
            tab.rows.push_back({double(d), e.value.real(), e.value.imag(), e.residual, double(rep.winding_count)});
        }
        ok = ok && rep.consistent && rep.winding_count == 1 && rep.eigenvalues.size() == 1 && err < 1e-8;
        detail += "d=" + std::to_string(d) + ": winding " + std::to_string(rep.winding_count) + ", roots " +
                  std::to_string(rep.eigenvalues.size()) + ", |root-1| " + fmt(err) + "; ";
    }
    r.tables.push_back(std::move(tab));
    r.seconds = sw.seconds();
    r.passed = ok;
    r.detail = detail + "region " + to_string(region);
    return r;
}

CriterionResult check_unstable_rate(const VerifyOptions& opt) {
    Stopwatch sw;
    CriterionResult r = start(4);
    bool ok = true;
    std::string detail;
    for (int d : {3, 5, 7}) {
        EvolutionConfig cfg;
        cfg.d = d;
        cfg.n = opt.evolution_n;
        cfg.tau_max = 2.0;
        cfg.record_every = 0.05;
        cfg.fit_start = 0.0;
        cfg.fit_end = 2.0;
        cfg.exec = opt.exec;
        const Evolver ev(cfg);
        const TrajectoryRecord tr = ev.evolve(gauge_state(ev.grid()));
        const DecayFit amp = fit_log_linear(tr.times, tr.gauge_amplitude, 0.0, 2.0);
        const std::string tag = "_d" + std::to_string(d);
        metric(r, "norm_rate" + tag, tr.decay_fit.rate);
        metric(r, "amplitude_rate" + tag, amp.rate);
        ok = ok && tr.decay_fit.defined && std::abs(tr.decay_fit.rate - 1.0) <= 0.05;
        detail += "d=" + std::to_string(d) + " rate " + std::to_string(tr.decay_fit.rate) + "; ";
        if (d == 3) r.tables.push_back(trajectory_table("unstable_d3", tr));
    }
    r.seconds = sw.seconds();
    r.passed = ok;
    r.detail = detail + "target 1.00 +- 0.05 on tau in [0, 2]";
    return r;
}

CriterionResult check_free_decay(const VerifyOptions& opt) {
    Stopwatch sw;
    CriterionResult r = start(5);
    Rng rng(opt.seed ^ 0x05);
    EvolutionConfig cfg;
    cfg.d = 3;
    cfg.n = opt.evolution_n;
    cfg.include_Lprime = false;
    cfg.tau_max = 12.0;
    cfg.fit_start = 6.0;
    cfg.fit_end = 12.0;
    cfg.exec = opt.exec;
    const Evolver ev(cfg);
    double worst = -std::numeric_limits<double>::infinity();
    bool ok = true;
    Table tab{"free_decay_rates", {"sample", "rate", "fit_residual"}, {}};
    for (int i = 0; i < 10; ++i) {
        const TrajectoryRecord tr = ev.evolve(random_state(rng, ev.grid()));
        tab.rows.push_back({double(i), tr.decay_fit.rate, tr.decay_fit.residual});
        ok = ok && tr.decay_fit.defined && tr.decay_fit.rate <= -0.9;
        worst = std::max(worst, tr.decay_fit.rate);
    }
    metric(r, "max_rate", worst);
    r.tables.push_back(std::move(tab));
    r.seconds = sw.seconds();
    r.passed = ok;
    r.detail = "slowest fitted rate " + std::to_string(worst) + " over 10 random states, d=3, tail tau in [6, 12] (limit -0.9)";
    return r;
}

CriterionResult check_stable_decay(const VerifyOptions& opt) {
    Stopwatch sw;
    CriterionResult r = start(6);
    Rng rng(opt.seed ^ 0x06);
    bool ok = true;
    std::string detail;
    for (int d : {3, 5, 7}) {
        const Dimension dim(d);
        const std::string tag = "_d" + std::to_string(d);
        EvolutionConfig cfg;
        cfg.d = d;
        cfg.n = opt.evolution_n;
        cfg.tau_max = 12.0;
        cfg.fit_start = 6.0;
        cfg.fit_end = 12.0;
        cfg.exec = opt.exec;

        EvolutionConfig lin = cfg;
        lin.gauge = GaugeHandling::project;
        const Evolver lev(lin);
        const TrajectoryRecord ltr = lev.evolve(random_state(rng, lev.grid()));
        metric(r, "linear_rate" + tag, ltr.decay_fit.rate);
        const bool lin_ok = ltr.decay_fit.defined && ltr.decay_fit.rate < -0.05;

        EvolutionConfig nl = cfg;
        nl.nonlinear = true;
        nl.delta = 0.05;
        const double T0 = 1.0;
        const DataPair v = perturbation_data("gaussian", 1e-3, T0, dim);
        const ConeFrame frame = make_frame(T0, T0, nl.delta);
        const SelectTResult sel = select_T(v, frame, nl);
        nl.gauge = GaugeHandling::adjust_T;
        const Evolver nev(nl);
        const State u = initial_data_U(v, sel.T, make_frame(sel.T, T0, nl.delta), nev.grid());
        const TrajectoryRecord ntr = nev.evolve(u);
        metric(r, "selected_T" + tag, sel.T);
        double slowest = -std::numeric_limits<double>::infinity();
        bool nl_ok = !ntr.diverged;
        for (size_t k = 0; k < ntr.order_fits.size(); ++k) {
            const DecayFit& f = ntr.order_fits[k];
            metric(r, "nonlinear_rate_" + ntr.norm_labels[k] + tag, f.rate);
            nl_ok = nl_ok && f.defined && f.rate < 0.0;
            if (f.defined) slowest = std::max(slowest, f.rate);
        }
        ok = ok && lin_ok && nl_ok;
        detail += "d=" + std::to_string(d) + " linear " + std::to_string(ltr.decay_fit.rate) +
                  ", nonlinear slowest order " + std::to_string(slowest) + "; ";
        if (d == 3) {
            r.tables.push_back(trajectory_table("projected_linear_d3", ltr));
            r.tables.push_back(trajectory_table("adjusted_nonlinear_d3", ntr));
        }
    }
    r.seconds = sw.seconds();
    r.passed = ok;
    r.detail = detail + "limits: linear < -0.05, nonlinear (amplitude 1e-3, selected T) < 0 in every order";
    return r;
}

CriterionResult check_T_recovery(const VerifyOptions& opt) {
    Stopwatch sw;
    CriterionResult r = start(7);
    bool ok = true;
    std::string detail;
    const double T0 = 1.0;
    Table tab{"T_recovery", {"d", "T_true", "T_selected", "T_estimated"}, {}};
    for (int d : {3, 5}) {
        const Dimension dim(d);
        for (double sgn : {1.0, -1.0}) {
            const double Tp = T0 * (1.0 + sgn * 1e-2);
            const DataPair v = profile_shift_data(Tp, T0, dim);
            EvolutionConfig cfg;
            cfg.d = d;
            cfg.n = opt.evolution_n;
            cfg.tau_max = 12.0;
            cfg.nonlinear = true;
            cfg.delta = 0.05;
            cfg.exec = opt.exec;
            const ConeFrame frame = make_frame(T0, T0, cfg.delta);
            const SelectTResult sel = select_T(v, frame, cfg);

            EvolutionConfig fwd = cfg;
            fwd.tau_max = 2.0;
            fwd.record_every = 0.05;
            const Evolver ev(fwd);
            const TrajectoryRecord tr = ev.evolve(initial_data_U(v, T0, frame, ev.grid()));
            const auto series = origin_gradient_series(tr, T0, dim, 0.0, 2.0);
            const BlowupEstimate est = estimate_blowup_time(series.first, series.second);

            const double e_sel = std::abs(sel.T - Tp) / Tp;
            const double e_est = std::abs(est.T - Tp) / Tp;
            const std::string tag = "_d" + std::to_string(d) + (sgn > 0 ? "_plus" : "_minus");
            metric(r, "select_T_rel_error" + tag, e_sel);
            metric(r, "blowup_estimate_rel_error" + tag, e_est);
            tab.rows.push_back({double(d), Tp, sel.T, est.T});
            ok = ok && e_sel < 1e-3 && est.reliable && e_est < 1e-3;
            detail += "d=" + std::to_string(d) + " T'=" + std::to_string(Tp) + ": " + fmt(e_sel) + "/" +
                      fmt(e_est) + "; ";
        }
    }
    r.tables.push_back(std::move(tab));
    r.seconds = sw.seconds();
    r.passed = ok;
    r.detail = detail + "relative errors select_T/blowup estimate (limit 1e-3)";
    return r;
}

std::vector<NormExponent> profile_norm_exponents(const Dimension& dim, const std::vector<double>& radii, int n) {
    if (radii.size() < 2) throw std::invalid_argument("profile_norm_exponents: need at least two radii");
    const RadialGrid grid = build_grid(n, dim);
    const double T = *std::max_element(radii.begin(), radii.end()) + 1.0;
    const int m = dim.m();
    std::vector<Eigen::VectorXd> u, ut;
    for (double s : radii) {
        if (!(s > 0.0)) throw std::invalid_argument("profile_norm_exponents: radii must be positive");
        const double t = T - s;
        Eigen::VectorXd a(grid.n), b(grid.n);
        for (int j = 0; j < grid.n; ++j) {
            const double rr = s * grid.rho[j];
            if (rr == 0.0) {
                a[j] = f0_over_rho(0.0, dim) / s;
                b[j] = f0_prime(0.0, dim) / (s * s);
            } else {
                const auto [psi, psi_t] = psiT(t, rr, T, dim);
                a[j] = psi / rr;
                b[j] = psi_t / rr;
            }
        }
        u.push_back(a);
        ut.push_back(b);
    }
    auto slope = [&](const std::vector<Eigen::VectorXd>& f, int k) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < radii.size(); ++i) {
            const double x = std::log(radii[i]);
            const double y = std::log(sobolev_seminorm(f[i], k, radii[i], grid));
            sx += x, sy += y, sxx += x * x, sxy += x * y;
        }
        const double nn = double(radii.size());
        return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    };
    std::vector<NormExponent> out;
    for (int k = 0; k <= m; ++k) out.push_back({1, k, slope(u, k), 0.5 * dim.d() - k});
    for (int l = 0; l <= m - 1; ++l) out.push_back({2, l, slope(ut, l), 0.5 * dim.d() - l - 1});
    return out;
}

CriterionResult check_norm_scaling(const VerifyOptions& opt) {
    Stopwatch sw;
    CriterionResult r = start(8);
    double worst = 0.0;
    Table tab{"norm_scaling", {"d", "component", "order", "fitted_exponent", "expected"}, {}};
    for (int d : {3, 5}) {
        for (const NormExponent& e : profile_norm_exponents(Dimension(d), {1.0, 0.5, 0.25}, opt.evolution_n)) {
            worst = std::max(worst, std::abs(e.fitted - e.expected));
            tab.rows.push_back({double(d), double(e.component), double(e.order), e.fitted, e.expected});
        }
    }
    metric(r, "max_exponent_error", worst);
    r.tables.push_back(std::move(tab));
    r.seconds = sw.seconds();
    r.passed = worst < 1e-3;
    r.detail = "max |fitted - expected| exponent " + fmt(worst) + " over radii 1, 1/2, 1/4, d in {3,5} (limit 1e-3)";
    return r;
}

CriterionResult check_nonlinearity(const VerifyOptions& opt) {
    Stopwatch sw;
    CriterionResult r = start(9);
    Rng rng(opt.seed ^ 0x09);
    // Closed form against the triple integral, and M against a centered difference of Nhat.
    double worst_closed = 0.0, worst_m = 0.0;
    for (int d : {3, 5, 7, 9}) {
        const Dimension dim(d);
        for (int i = 0; i <= 10; ++i) {
            const double rho = i == 0 ? kSmallRho : 0.1 * i;
            for (int j = -4; j <= 4; ++j) {
                const double zeta = 0.25 * j;
                const double a = nonlinearity_Nhat_closed(rho, zeta, dim);
                const double b = nonlinearity_Nhat_integral(rho, zeta, dim);
                worst_closed = std::max(worst_closed, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }
        }
        for (int i = 0; i <= 10; ++i) {
            const double rho = 0.1 * i;
            for (int j = -4; j <= 4; ++j) {
                const double zeta = 0.25 * j;
                const double h = 1e-5;
                const double fd =
                    (nonlinearity_Nhat(rho, zeta + h, dim) - nonlinearity_Nhat(rho, zeta - h, dim)) / (2.0 * h);
                const double mv = nonlinearity_M(rho, zeta, dim);
                worst_m = std::max(worst_m, std::abs(mv - fd) / std::max(1.0, std::abs(fd)));
            }
        }
    }
    metric(r, "closed_vs_integral", worst_closed);
    metric(r, "M_vs_difference", worst_m);

    // Lipschitz quotient |N(u)-N(v)| / ((|u|+|v|) |u-v|) on pairs in the 0.1 ball, and the
    // same shapes shrunk by 10: bounded means the shrunken maximum does not grow.
    const Dimension dim(3);
    const RadialGrid grid = build_grid(opt.evolution_n, dim);
    auto nonlinear = [&](const State& s) { return apply_N(s, grid, opt.exec); };
    auto quotient = [&](const State& a, const State& b) {
        const State na = nonlinear(a), nb = nonlinear(b);
        State dn = na, du = a;
        dn.phi1 -= nb.phi1, dn.phi2 -= nb.phi2;
        du.phi1 -= b.phi1, du.phi2 -= b.phi2;
        return state_norm(dn, grid) / ((state_norm(a, grid) + state_norm(b, grid)) * state_norm(du, grid));
    };
    auto scaled = [&](State s, double target) {
        const double k = target / state_norm(s, grid);
        s.phi1 *= k, s.phi2 *= k;
        return s;
    };
    double kmax = 0.0, kmax_small = 0.0;
    Table tab{"lipschitz_pairs", {"pair", "norm_u", "norm_v", "quotient", "quotient_shrunk"}, {}};
    for (int i = 0; i < 20; ++i) {
        const double ra = rng.uniform(0.05, 1.0) * 0.1, rb = rng.uniform(0.05, 1.0) * 0.1;
        const State a = scaled(random_state(rng, grid), ra);
        const State b = scaled(random_state(rng, grid), rb);
        const double q = quotient(a, b);
        const double qs = quotient(scaled(a, 0.1 * ra), scaled(b, 0.1 * rb));
        kmax = std::max(kmax, q);
        kmax_small = std::max(kmax_small, qs);
        tab.rows.push_back({double(i), ra, rb, q, qs});
    }
    metric(r, "lipschitz_K", kmax);
    metric(r, "lipschitz_K_shrunk", kmax_small);
    r.tables.push_back(std::move(tab));
    const bool lip_ok = std::isfinite(kmax) && std::isfinite(kmax_small) && kmax_small <= 2.0 * kmax &&
                        kmax <= 2.0 * kmax_small;
    r.seconds = sw.seconds();
    r.passed = worst_closed < 1e-9 && worst_m < 1e-6 && lip_ok;
    r.detail = "closed vs integral " + fmt(worst_closed) + " (1e-9), M vs difference " + fmt(worst_m) +
               " (1e-6), Lipschitz K " + fmt(kmax) + " / shrunk " + fmt(kmax_small);
    return r;
}

CriterionResult check_appendix(const VerifyOptions&) {
    Stopwatch sw;
    CriterionResult r = start(10);
    bool ok = true;
    double jm = 0.0, susy = 0.0, susy_exact = 0.0;
    for (int m : {2, 3, 4}) {
        const double e = J_m_identity_error(m);
        const SusyWitness w = susy_residual(m);
        metric(r, "Jm_error_m" + std::to_string(m), e);
        metric(r, "susy_residual_m" + std::to_string(m), w.residual_sup);
        metric(r, "susy_residual_exact_m" + std::to_string(m), w.residual_sup_exact);
        jm = std::max(jm, e);
        susy = std::max(susy, w.residual_sup);
        susy_exact = std::max(susy_exact, w.residual_sup_exact);
    }
    ok = ok && jm < 1e-10 && susy < 1e-8 && susy_exact < 1e-8;
    std::string logs;
    Table tab{"log_coefficients", {"d", "series", "fit", "agreement"}, {}};
    for (int d : {5, 7, 9}) {
        const LogDetection L = log_coefficient_Id(Dimension(d));
        metric(r, "log_coefficient_d" + std::to_string(d), L.series);
        metric(r, "log_fit_agreement_d" + std::to_string(d), L.agreement);
        tab.rows.push_back({double(d), L.series, L.fit, L.agreement});
        ok = ok && L.exact != "0";
        if (d == 5) {
            // coefficient = -b0 * F_5(1) with F_5(1) = 1/8
            const bool prop = L.taylor_coefficient == "1/8" &&
                              Rational(L.exact) == -Rational(L.b0) * Rational(1, 8);
            metric(r, "d5_proportional_to_F5_1", prop ? 1.0 : 0.0);
            ok = ok && prop;
        }
        logs += "d=" + std::to_string(d) + " " + L.exact + "; ";
    }
    const auto [fit3, exact3] = u_hat2_log_coefficient_d3();
    metric(r, "uhat2_log_coefficient_d3", fit3);
    ok = ok && std::abs(fit3) > 1e-6;
    r.tables.push_back(std::move(tab));
    r.seconds = sw.seconds();
    r.passed = ok && r.seconds < 60.0;
    r.detail = "J_m error " + fmt(jm) + ", SUSY residual " + fmt(susy) + " (exact route " + fmt(susy_exact) +
               "), log coefficients " + logs + "d=3 uhat2 log coefficient " + std::to_string(fit3) +
               " (expected " + std::to_string(exact3) + ")";
    return r;
}

CriterionResult check_determinism(const std::vector<std::pair<std::string, std::string>>& first,
                                  const std::vector<std::pair<std::string, std::string>>& second) {
    Stopwatch sw;
    CriterionResult r = start(11);
    std::string mismatch;
    if (first.size() != second.size()) mismatch = "different file sets";
    for (size_t i = 0; mismatch.empty() && i < first.size(); ++i) {
        if (first[i].first != second[i].first) mismatch = "different file sets";
        else if (first[i].second != second[i].second) mismatch = first[i].first + " differs";
    }
    metric(r, "files_compared", double(first.size()));
    r.passed = mismatch.empty() && !first.empty();
    r.detail = r.passed ? std::to_string(first.size()) + " files byte-identical across repeats"
                        : (first.empty() ? std::string("nothing to compare") : mismatch);
    r.seconds = sw.seconds();
    return r;
}

CriterionResult run_criterion(int id, const VerifyOptions& opt) {
    switch (id) {
        case 1: return check_profile_residual(opt);
        case 2: return check_gauge_eigenpair(opt);
        case 3: return check_spectral_gap(opt);
        case 4: return check_unstable_rate(opt);
        case 5: return check_free_decay(opt);
        case 6: return check_stable_decay(opt);
        case 7: return check_T_recovery(opt);
        case 8: return check_norm_scaling(opt);
        case 9: return check_nonlinearity(opt);
        case 10: return check_appendix(opt);
    }
    throw std::out_of_range("run_criterion: id must be in 1..10");
}

std::vector<int> parse_criteria(const std::string& spec) {
    std::vector<int> ids;
    std::stringstream ss(spec);
    std::string part;
    auto to_int = [&](const std::string& s) {
        size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 1 || v > kCriterionCount) {
            throw std::invalid_argument("criteria: '" + s + "' is not an id in 1..11");
        }
        return v;
    };
    while (std::getline(ss, part, ',')) {
        if (part.empty()) throw std::invalid_argument("criteria: empty entry in '" + spec + "'");
        const auto dash = part.find('-');
        if (dash == std::string::npos) {
            ids.push_back(to_int(part));
        } else {
            const int a = to_int(part.substr(0, dash)), b = to_int(part.substr(dash + 1));
            if (a > b) throw std::invalid_argument("criteria: descending range '" + part + "'");
            for (int i = a; i <= b; ++i) ids.push_back(i);
        }
    }
    if (ids.empty()) throw std::invalid_argument("criteria: no ids given");
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

}  // namespace wmlab
