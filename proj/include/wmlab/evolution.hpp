#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "wmlab/chebyshev.hpp"
#include "wmlab/frames.hpp"
#include "wmlab/grid.hpp"
#include "wmlab/kernels.hpp"
#include "wmlab/state.hpp"

namespace wmlab {

// Dense matrix of the linearized operator on stacked (phi1, phi2) samples,
// in the variable x = rho^2 on cgl_nodes(n, 0, 1):
//   L0 = [[-2X Dx - I, I], [4X Dx^2 + 2(d+2) Dx, -2X Dx - 2I]]
//   L' = [[0, 0], [-(d-1)/2 V, 0]]
// No boundary condition is imposed at rho = 1.
template <class Real>
MatrixX<Real> assemble_operator(int n, const Dimension& dim, bool with_Lprime) {
    const auto x = cgl_nodes<Real>(n, Real(0), Real(1));
    const MatrixX<Real> D = cgl_diff_matrix<Real>(x);
    const MatrixX<Real> D2 = D * D;
    const Real c = Real(dim.d() - 2);
    MatrixX<Real> L = MatrixX<Real>::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Real tx = 2 * x[i] * D(i, j);
            L(i, j) = -tx;
            L(n + i, j) = 4 * x[i] * D2(i, j) + Real(2 * (dim.d() + 2)) * D(i, j);
            L(n + i, n + j) = -tx;
        }
        L(i, i) -= 1;
        L(i, n + i) += 1;
        L(n + i, n + i) -= 2;
        if (with_Lprime) {
            const Real q = x[i] + c;
            const Real V = -16 * c / (q * q);
            L(n + i, i) += -Real(dim.d() - 1) / 2 * V;
        }
    }
    return L;
}

State apply_L0(const State& s, const RadialGrid& grid);
State apply_Lprime(const State& s, const RadialGrid& grid);
// (0, Nhat(rho, phi1)) pointwise.
State apply_N(const State& s, const RadialGrid& grid, Execution exec = Execution::serial);

// Rank-one spectral projection onto the gauge mode.
struct GaugeProjection {
    Eigen::VectorXd right_mode;  // stacked, scaled so that its first entry is g1(0)
    Eigen::VectorXd left_mode;   // stacked, <left, right> = 1
    double normalization = 1.0;  // <left, right> before normalization
    double eigenvalue = 1.0;     // discrete eigenvalue found near 1

    double amplitude(const Eigen::VectorXd& u) const { return left_mode.dot(u); }
    Eigen::VectorXd apply(const Eigen::VectorXd& u) const { return amplitude(u) * right_mode; }
    Eigen::VectorXd complement(const Eigen::VectorXd& u) const { return u - apply(u); }
};

// sqrt(sum_{k<=m} |phi1|_k^2 + sum_{k<=m-1} |phi2|_k^2) on the unit ball.
double state_norm(const State& s, const RadialGrid& grid);

// Throws std::runtime_error if no discrete eigenvalue lies within 1e-3 of 1.
GaugeProjection build_gauge_projection(const RadialGrid& grid);

enum class GaugeHandling { none, project, adjust_T };

std::string to_string(GaugeHandling g);
GaugeHandling gauge_handling_from_string(const std::string& s);

struct EvolutionConfig {
    int d = 3;
    int n = 32;
    double dtau = 0.0;  // 0 selects cfl / n^2
    double cfl = 8.0;
    double tau_max = 12.0;
    bool nonlinear = false;
    bool include_Lprime = true;
    GaugeHandling gauge = GaugeHandling::none;
    double delta = 0.1;
    double record_every = 0.1;
    double fit_start = -1.0;  // negative: tau_max / 2
    double fit_end = -1.0;    // negative: tau_max
    double divergence_threshold = 1e6;
    int picard_max = 8;
    double picard_tol = 1e-15;
    Execution exec = Execution::serial;
};

// Time step actually used: tau_max split into equal steps no longer than
// dtau (or cfl / n^2).
double effective_dtau(const EvolutionConfig& cfg);

struct DecayFit {
    bool defined = false;
    double rate = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
};

// Least-squares line through (t, log y) for t in [t0, t1]; undefined when any
// y in the window is not positive and finite or fewer than 3 points remain.
DecayFit fit_log_linear(const std::vector<double>& t, const std::vector<double>& y, double t0, double t1);

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<std::string> norm_labels;  // "H", "phi1_k0".., "phi2_k0"..
    std::vector<std::vector<double>> norms;  // norms[i][label]
    std::vector<double> gauge_amplitude;
    std::vector<double> origin_phi1;  // phi1(tau, 0)
    DecayFit decay_fit;               // fit of the "H" column
    std::vector<DecayFit> order_fits;  // one per label
    // Dense per-step data for the correction integral.
    std::vector<double> step_times;
    std::vector<double> step_p;  // <left, N(Phi)> at every step
    std::vector<double> adjustment;  // a(tau) (adjust_T only)
    int picard_iterations = 0;
    double picard_change = 0.0;
    bool diverged = false;
    double divergence_tau = std::numeric_limits<double>::quiet_NaN();
    std::string event;
    double dtau = 0.0;
    State final_state;
};

class Evolver {
public:
    explicit Evolver(const EvolutionConfig& cfg);

    const RadialGrid& grid() const { return grid_; }
    const GaugeProjection& projection() const { return proj_; }
    const EvolutionConfig& config() const { return cfg_; }
    const Eigen::MatrixXd& matrix() const { return L_; }

    // L Phi (+ N(Phi) when nonlinear) on stacked vectors.
    Eigen::VectorXd rhs(const Eigen::VectorXd& u) const;
    Eigen::VectorXd nonlinear_term(const Eigen::VectorXd& u) const;

    // One classical RK4 step of du/dtau = rhs(u).
    State step_rk4(const State& s, double dtau) const;

    TrajectoryRecord evolve(const State& initial) const;

private:
    void record(TrajectoryRecord& tr, double tau, const Eigen::VectorXd& phi) const;
    void finish(TrajectoryRecord& tr) const;

    EvolutionConfig cfg_;
    Dimension dim_;
    RadialGrid grid_;
    Eigen::MatrixXd L_;
    GaugeProjection proj_;
};

State step_rk4(const State& s, const Evolver& ev);
TrajectoryRecord evolve(const State& initial, const EvolutionConfig& cfg);

struct CorrectionTerm {
    double value = 0.0;       // coefficient c with <C, g> = c ||g||^2
    double tail_bound = 0.0;  // e^{-tau_max} sup |p|
    bool tail_warning = false;
};

CorrectionTerm correction_term(const TrajectoryRecord& tr, const State& initial, const GaugeProjection& proj);

// Data psi^{T1}[0] - psi^{T0}[0] with closed-form quotients.
DataPair profile_shift_data(double T1, double T0, const Dimension& dim);

// Named perturbation shapes scaled by amplitude A:
//   "gaussian"       F = A r e^{-r^2},  G = A r e^{-r^2}
//   "cubic"          F = A r^3,         G = 0
//   "profile_shift"  psi^{T0(1+A)}[0] - psi^{T0}[0]
// Throws std::invalid_argument for other names.
DataPair perturbation_data(const std::string& shape, double amplitude, double T0, const Dimension& dim);
const std::vector<std::string>& perturbation_shapes();

struct SelectTResult {
    double T = 0.0;
    double functional = 0.0;
    int evaluations = 0;
    double f_low = 0.0, f_high = 0.0;
};

struct BracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Root of T -> correction coefficient of the adjusted evolution of U(v, T).
// Throws BracketError when the functional has no sign change on [T0 - delta, T0 + delta].
SelectTResult select_T(const DataPair& v, const ConeFrame& frame, const EvolutionConfig& cfg);

struct BlowupEstimate {
    double T = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
    bool reliable = false;
};

// Linear fit of 1/psi_r(t, 0) against t; the t-intercept estimates T.
BlowupEstimate estimate_blowup_time(const std::vector<double>& t, const std::vector<double>& psi_r_origin);

// (t_k, psi_r(t_k, 0)) for records with tau in [tau_from, tau_to].
std::pair<std::vector<double>, std::vector<double>> origin_gradient_series(
    const TrajectoryRecord& tr, double T, const Dimension& dim, double tau_from, double tau_to);

}  // namespace wmlab
