#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wmlab/grid.hpp"
#include "wmlab/state.hpp"

namespace wmlab {

struct ConeFrame {
    double T;
    double T0;
    double delta;
};

// Validates T0 - delta > 0 and |T - T0| <= delta.
ConeFrame make_frame(double T, double T0, double delta);

struct SimilarityPoint {
    double tau;
    double rho;
};

// (tau, rho) = (log(T/(T-t)), r/(T-t)); throws std::domain_error outside the closed cone.
SimilarityPoint to_similarity(double t, double r, const ConeFrame& frame);
// (t, r) = (T(1 - e^{-tau}), T rho e^{-tau}).
std::pair<double, double> from_similarity(const SimilarityPoint& p, const ConeFrame& frame);

using RadialFunction = std::function<double(double)>;
using SpacetimeFunction = std::function<double(double, double)>;

// Barycentric interpolant through samples (r_i, f_i); nodes must include r = 0.
class SampledRadial {
public:
    SampledRadial(std::vector<double> nodes, std::vector<double> values);
    double operator()(double r) const;

private:
    std::vector<double> r_, f_, w_;
};

// Radial data v = (F, G). F_over_r and G_over_r are optional closed forms of
// F(r)/r and G(r)/r; when absent the quotient near r = 0 is extrapolated.
struct DataPair {
    RadialFunction F;
    RadialFunction G;
    RadialFunction F_over_r;
    RadialFunction G_over_r;
};

DataPair zero_data();

// h(rho)/rho for odd h, continued evenly to rho = 0 by polynomial
// extrapolation in rho^2 from samples above kSmallRho.
double odd_quotient(const RadialFunction& h, double rho);

// Similarity-variable initial data U(v, T) on the grid; throws outside the T bracket.
State initial_data_U(const DataPair& v, double T, const ConeFrame& frame, const RadialGrid& grid);

struct RescaledState {
    State state;
    double origin_value = 0.0;  // |psi(t, 0)|
    bool origin_flag = false;   // origin_value above 1e-10
};

// psi_1 = (T-t)/r psi, psi_2 = (T-t)^2/r psi_t sampled at similarity time tau.
RescaledState rescale_fields(const SpacetimeFunction& psi, const SpacetimeFunction& psi_t, double tau,
                             const ConeFrame& frame, const RadialGrid& grid);

// Inverse of rescale_fields at the grid radii r_j = T rho_j e^{-tau}: returns (psi, psi_t).
std::pair<Eigen::VectorXd, Eigen::VectorXd> unrescale_fields(const State& s, const ConeFrame& frame,
                                                             const RadialGrid& grid);

}  // namespace wmlab
