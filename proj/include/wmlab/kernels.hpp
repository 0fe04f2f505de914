#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "wmlab/dimension.hpp"

namespace wmlab {

enum class Execution { serial, parallel };

// Reference loops. Kept for testing the OpenMP versions and for small problems.
namespace serial {

void matvec(const Eigen::MatrixXd& A, const Eigen::VectorXd& x, Eigen::VectorXd& y);
void nhat_grid(const std::vector<double>& rho, const Eigen::VectorXd& zeta, const Dimension& dim,
               Eigen::VectorXd& out);

template <class F>
void for_each_index(std::size_t n, F&& f) {
    for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace serial

namespace parallel {

void matvec(const Eigen::MatrixXd& A, const Eigen::VectorXd& x, Eigen::VectorXd& y);
void nhat_grid(const std::vector<double>& rho, const Eigen::VectorXd& zeta, const Dimension& dim,
               Eigen::VectorXd& out);

template <class F>
void for_each_index(std::size_t n, F&& f) {
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
}

}  // namespace parallel

inline void matvec(Execution e, const Eigen::MatrixXd& A, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    e == Execution::parallel ? parallel::matvec(A, x, y) : serial::matvec(A, x, y);
}

inline void nhat_grid(Execution e, const std::vector<double>& rho, const Eigen::VectorXd& zeta,
                      const Dimension& dim, Eigen::VectorXd& out) {
    e == Execution::parallel ? parallel::nhat_grid(rho, zeta, dim, out)
                             : serial::nhat_grid(rho, zeta, dim, out);
}

template <class F>
void for_each_index(Execution e, std::size_t n, F&& f) {
    if (e == Execution::parallel) {
        parallel::for_each_index(n, f);
    } else {
        serial::for_each_index(n, f);
    }
}

}  // namespace wmlab
