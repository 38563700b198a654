#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>

namespace cca {

// Dense matrix exponential by Pade approximation with scaling and squaring.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

// y = exp(a * t) * v for sparse a, by restarted Arnoldi with adaptive
// substepping.  Deterministic; tol is the target accuracy per unit time.
Eigen::VectorXcd expm_multiply(const Eigen::SparseMatrix<std::complex<double>>& a, double t,
                               const Eigen::VectorXcd& v, double tol = 1e-10,
                               int krylov_dim = 30);

}  // namespace cca
