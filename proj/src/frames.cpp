#include "wmlab/frames.hpp"

#include <cmath>
#include <stdexcept>

#include "wmlab/profiles.hpp"

namespace wmlab {

namespace {

constexpr int kExtrapPoints = 10;
constexpr double kExtrapTop = 0.05;

std::vector<double> barycentric_weights(const std::vector<double>& x) {
    std::vector<double> w(x.size(), 1.0);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (i != j) w[i] /= (x[i] - x[j]);
    return w;
}

double barycentric_eval(const std::vector<double>& x, const std::vector<double>& f,
                        const std::vector<double>& w, double t) {
    double num = 0.0, den = 0.0;
    for (size_t j = 0; j < x.size(); ++j) {
        if (t == x[j]) return f[j];
        const double c = w[j] / (t - x[j]);
        num += c * f[j];
        den += c;
    }
    return num / den;
}

}  // namespace

ConeFrame make_frame(double T, double T0, double delta) {
    if (!(delta > 0.0) || !(T0 - delta > 0.0)) {
        throw std::invalid_argument("make_frame: need delta > 0 and T0 - delta > 0");
    }
    if (std::abs(T - T0) > delta * (1.0 + 1e-14)) {
        throw std::invalid_argument("make_frame: T outside [T0 - delta, T0 + delta]");
    }
    return {T, T0, delta};
}

SimilarityPoint to_similarity(double t, double r, const ConeFrame& frame) {
    const double T = frame.T;
    if (!(t >= 0.0 && t < T) || r < 0.0 || r > (T - t) * (1.0 + 1e-15)) {
        throw std::domain_error("to_similarity: point outside the backward cone");
    }
    const double s = T - t;
    return {std::log(T / s), std::min(r / s, 1.0)};
}

std::pair<double, double> from_similarity(const SimilarityPoint& p, const ConeFrame& frame) {
    const double e = std::exp(-p.tau);
    return {-frame.T * std::expm1(-p.tau), frame.T * p.rho * e};
}

SampledRadial::SampledRadial(std::vector<double> nodes, std::vector<double> values)
    : r_(std::move(nodes)), f_(std::move(values)) {
    if (r_.size() != f_.size() || r_.empty()) {
        throw std::invalid_argument("SampledRadial: nodes and values must match and be nonempty");
    }
    bool has_origin = false;
    for (double r : r_) has_origin = has_origin || r == 0.0;
    if (!has_origin) throw std::invalid_argument("SampledRadial: samples must include r = 0");
    w_ = barycentric_weights(r_);
}

double SampledRadial::operator()(double r) const { return barycentric_eval(r_, f_, w_, r); }

DataPair zero_data() {
    auto z = [](double) { return 0.0; };
    return {z, z, z, z};
}

double odd_quotient(const RadialFunction& h, double rho) {
    if (rho >= kSmallRho) return h(rho) / rho;
    static const std::vector<double> nodes = [] {
        auto x = cgl_nodes<double>(kExtrapPoints, kSmallRho * kSmallRho, kExtrapTop * kExtrapTop);
        return x;
    }();
    static const std::vector<double> weights = barycentric_weights(nodes);
    std::vector<double> vals(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        const double r = std::sqrt(nodes[i]);
        vals[i] = h(r) / r;
    }
    return barycentric_eval(nodes, vals, weights, rho * rho);
}

State initial_data_U(const DataPair& v, double T, const ConeFrame& frame, const RadialGrid& grid) {
    if (std::abs(T - frame.T0) > frame.delta * (1.0 + 1e-14)) {
        throw std::invalid_argument("initial_data_U: T outside [T0 - delta, T0 + delta]");
    }
    const Dimension& dim = grid.dim;
    const double s = T / frame.T0;
    RadialFunction Fq = v.F_over_r ? RadialFunction([&](double rho) { return T * v.F_over_r(T * rho); })
                                   : RadialFunction();
    RadialFunction Gq = v.G_over_r ? RadialFunction([&](double rho) { return T * v.G_over_r(T * rho); })
                                   : RadialFunction();
    auto Fh = [&](double rho) { return v.F(T * rho); };
    auto Gh = [&](double rho) { return v.G(T * rho); };
    State out = State::zero(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double rho = grid.rho[j];
        const double fq = Fq ? Fq(rho) : odd_quotient(Fh, rho);
        const double gq = Gq ? Gq(rho) : odd_quotient(Gh, rho);
        out.phi1[j] = s * f0_over_rho(s * rho, dim) - f0_over_rho(rho, dim) + fq;
        out.phi2[j] = s * s * f0_prime(s * rho, dim) - f0_prime(rho, dim) + T * gq;
    }
    return out;
}

RescaledState rescale_fields(const SpacetimeFunction& psi, const SpacetimeFunction& psi_t, double tau,
                             const ConeFrame& frame, const RadialGrid& grid) {
    const double T = frame.T;
    const double t = -T * std::expm1(-tau);
    const double scale = T * std::exp(-tau);
    RescaledState out;
    out.state = State::zero(grid.n);
    out.state.tau = tau;
    out.origin_value = std::abs(psi(t, 0.0));
    out.origin_flag = out.origin_value > 1e-10;
    auto h1 = [&](double rho) { return psi(t, scale * rho); };
    auto h2 = [&](double rho) { return scale * psi_t(t, scale * rho); };
    for (int j = 0; j < grid.n; ++j) {
        out.state.phi1[j] = odd_quotient(h1, grid.rho[j]);
        out.state.phi2[j] = odd_quotient(h2, grid.rho[j]);
    }
    return out;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> unrescale_fields(const State& s, const ConeFrame& frame,
                                                             const RadialGrid& grid) {
    const double scale = frame.T * std::exp(-s.tau);
    Eigen::VectorXd psi(grid.n), psi_t(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        psi[j] = grid.rho[j] * s.phi1[j];
        psi_t[j] = grid.rho[j] * s.phi2[j] / scale;
    }
    return {psi, psi_t};
}

}  // namespace wmlab
