#include "wmlab/kernels.hpp"

#include "wmlab/profiles.hpp"

namespace wmlab {

namespace serial {

void matvec(const Eigen::MatrixXd& A, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const Eigen::Index rows = A.rows(), cols = A.cols();
    y.resize(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < cols; ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
}

void nhat_grid(const std::vector<double>& rho, const Eigen::VectorXd& zeta, const Dimension& dim,
               Eigen::VectorXd& out) {
    const Eigen::Index n = zeta.size();
    out.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = nonlinearity_Nhat(rho[i], zeta[i], dim);
}

}  // namespace serial

namespace parallel {

void matvec(const Eigen::MatrixXd& A, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    const Eigen::Index rows = A.rows(), cols = A.cols();
    y.resize(rows);
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < rows; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < cols; ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
}

void nhat_grid(const std::vector<double>& rho, const Eigen::VectorXd& zeta, const Dimension& dim,
               Eigen::VectorXd& out) {
    const Eigen::Index n = zeta.size();
    out.resize(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (Eigen::Index i = 0; i < n; ++i) out[i] = nonlinearity_Nhat(rho[i], zeta[i], dim);
}

}  // namespace parallel

}  // namespace wmlab
