#include "sphier/linalg.hpp"

#include <cmath>
#include <limits>

namespace sphier {

EigSym eig_sym(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_sym: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd eig_sym_values(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_sym: eigensolver failed");
  return es.eigenvalues();
}

Eigen::VectorXd eig_herm_values(const Eigen::MatrixXcd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_herm: eigensolver failed");
  return es.eigenvalues();
}

Eigen::MatrixXd cholesky(const Eigen::MatrixXd& A) {
  const auto N = A.rows();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    double diag = A(j, j) - L.row(j).head(j).squaredNorm();
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw NotPositiveDefinite(static_cast<int>(j), diag);
    L(j, j) = std::sqrt(diag);
    for (Eigen::Index i = j + 1; i < N; ++i)
      L(i, j) = (A(i, j) - L.row(i).head(j).dot(L.row(j).head(j))) / L(j, j);
  }
  return L;
}

double gen_eig_min(const Eigen::MatrixXd& Q, const Eigen::MatrixXd& M) {
  if (Q.rows() != M.rows() || Q.rows() != Q.cols() || M.rows() != M.cols())
    throw std::invalid_argument("gen_eig_min: size mismatch");
  Eigen::MatrixXd L = cholesky(M);
  auto Lt = L.triangularView<Eigen::Lower>();
  // C = L^{-1} Q L^{-T}
  Eigen::MatrixXd C = Lt.solve(Q);
  C = Lt.solve(C.transpose()).eval();
  C = 0.5 * (C + C.transpose()).eval();
  return eig_sym_values(C).minCoeff();
}

namespace {
template <typename Mat>
double schatten_impl(const Mat& A, double p, const Eigen::VectorXd& ev) {
  if (p == 2.0) return A.norm();
  if (p == 1.0) return ev.cwiseAbs().sum();
  if (std::isinf(p)) return ev.cwiseAbs().maxCoeff();
  throw std::invalid_argument("schatten_norm: p must be 1, 2 or infinity");
}
}  // namespace

double schatten_norm(const Eigen::MatrixXd& A, double p) {
  if (p == 2.0) return A.norm();
  return schatten_impl(A, p, eig_sym_values(0.5 * (A + A.transpose())));
}

double schatten_norm(const Eigen::MatrixXcd& A, double p) {
  if (p == 2.0) return A.norm();
  return schatten_impl(A, p, eig_herm_values(A));
}

}  // namespace sphier
