#pragma once

#include <Eigen/Dense>

namespace wmlab {

// Pair of grid functions (first and second component) at similarity time tau.
struct State {
    Eigen::VectorXd phi1;
    Eigen::VectorXd phi2;
    double tau = 0.0;

    static State zero(int n) { return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0.0}; }
    int n() const { return static_cast<int>(phi1.size()); }
    Eigen::VectorXd stacked() const;
    static State from_stacked(const Eigen::VectorXd& v, double tau = 0.0);
};

}  // namespace wmlab
