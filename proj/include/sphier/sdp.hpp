#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace sphier {

// Linear matrix inequality form:  maximize b^T y  s.t.  F0 + sum_i y_i F_i psd.
struct SdpProblem {
  Eigen::MatrixXd F0;
  std::vector<Eigen::MatrixXd> Fs;
  Eigen::VectorXd b;
};

enum class SdpStatus { Optimal, MaxIter, Infeasible, NumericalFailure };
std::string to_string(SdpStatus s);

struct SdpOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-7;
  double step_fraction = 0.98;
  int max_iter = 200;
  bool verbose = false;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  Eigen::VectorXd y;
  Eigen::MatrixXd S;        // slack iterate, tracks F(y)
  Eigen::MatrixXd Z;        // dual certificate: Z psd, <F_i,Z> = -b_i
  double primal_objective = 0;  // b^T y
  double dual_objective = 0;    // <F0, Z>, upper bound at optimality
  double gap = 0;               // <S, Z> complementarity
  double primal_infeas = 0;     // ||F(y) - S||_F / (1 + ||F0||_F)
  double dual_infeas = 0;       // max_i |b_i + <F_i,Z>| / (1 + ||b||_inf)
  int iterations = 0;
};

// Primal-dual path following with Nesterov-Todd scaling and a Mehrotra
// predictor-corrector step; the Schur complement is formed densely and
// factored by Cholesky.
SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt = {});

}  // namespace sphier
