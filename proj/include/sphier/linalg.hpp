#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace sphier {

struct NotPositiveDefinite : std::runtime_error {
  int pivot;
  double value;
  NotPositiveDefinite(int p, double v)
      : std::runtime_error("matrix not positive definite: pivot " + std::to_string(p) +
                           " has value " + std::to_string(v)),
        pivot(p),
        value(v) {}
};

struct EigSym {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

EigSym eig_sym(const Eigen::MatrixXd& A);
Eigen::VectorXd eig_sym_values(const Eigen::MatrixXd& A);
Eigen::VectorXd eig_herm_values(const Eigen::MatrixXcd& A);

// Lower Cholesky factor of a symmetric positive definite matrix; throws
// NotPositiveDefinite with the offending pivot otherwise.
Eigen::MatrixXd cholesky(const Eigen::MatrixXd& A);

// Smallest generalized eigenvalue of Q v = lambda M v with M positive
// definite (via the Cholesky congruence L^{-1} Q L^{-T}).
double gen_eig_min(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& M);

// Schatten p-norm (p = 1, 2 or infinity) of a symmetric / Hermitian matrix.
double schatten_norm(const Eigen::MatrixXd& A, double p);
double schatten_norm(const Eigen::MatrixXcd& A, double p);

}  // namespace sphier
