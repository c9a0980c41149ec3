#pragma once

#include <Eigen/Dense>
#include <memory>

#include "sphier/form.hpp"
#include "sphier/mindex.hpp"

namespace sphier {

// Matrix on the symmetric subspace S^d(R^n), written in the orthonormal basis
// b_alpha = C(d,alpha)^{-1/2} sum_{sequences with counts alpha} e_{i_1}x...xe_{i_d}.
// A doubly symmetric n^d x n^d matrix X (entries depending only on the count
// vectors of the row/column sequences) compresses to
//   mat(alpha, beta) = sqrt(C(d,alpha) C(d,beta)) * X_{i,j},  counts(i)=alpha.
class SymMatrix {
 public:
  SymMatrix(int n, int d);
  static SymMatrix identity(int n, int d);  // compress of Pi_d, i.e. of I restricted

  int n() const { return n_; }
  int d() const { return d_; }
  int size() const { return static_cast<int>(mat_.rows()); }
  const MonomialBasis& basis() const { return *basis_; }
  Eigen::MatrixXd& mat() { return mat_; }
  const Eigen::MatrixXd& mat() const { return mat_; }
  double trace() const { return mat_.trace(); }

 private:
  int n_, d_;
  std::shared_ptr<const MonomialBasis> basis_;
  Eigen::MatrixXd mat_;
};

// Maximally symmetric matrix on S^d: vec(M) is a symmetric 2d-tensor, stored
// as its moment vector y_gamma over gamma in N^n_{2d}.  The tensor-indexed
// entry at (i, j) is y_{counts(i) + counts(j)}.
class MaxSymMatrix {
 public:
  MaxSymMatrix(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  const MonomialBasis& moment_basis() const { return *basis2d_; }
  Eigen::VectorXd& moments() { return y_; }
  const Eigen::VectorXd& moments() const { return y_; }
  double moment(const MultiIndex& gamma) const { return y_(basis2d_->rank(gamma)); }
  void set_moment(const MultiIndex& gamma, double v) { y_(basis2d_->rank(gamma)) = v; }

  SymMatrix as_sym_matrix() const;

 private:
  int n_, d_;
  std::shared_ptr<const MonomialBasis> basis2d_;
  Eigen::VectorXd y_;
};

// Moment matrix of a form of even degree 2d: y_gamma = f_gamma / C(2d,gamma).
MaxSymMatrix maxsym_of_form(const Form& f);
Form form_of_maxsym(const MaxSymMatrix& m);

// The form <X, (xx^T)^{x d}> represented by a Gram matrix on S^d.
Form form_of_gram(const SymMatrix& g);

// Frobenius-orthogonal projection onto the maximally symmetric subspace:
// y_gamma = sum_{alpha+beta=gamma} w_ab G_ab / sum w_ab, w_ab = C(d,a)C(d,b).
MaxSymMatrix maxsym_project(const SymMatrix& g);

// Compressed Pi_{d+k} (A x I^{x k}) Pi_{d+k}.  Throws std::length_error when
// dim_sym(n, d+k) exceeds cap.
SymMatrix sym_lift(const SymMatrix& a, int k, long long cap = 5000);

// Partial trace over k registers, S^r -> S^{r-k}; adjoint of sym_lift.
SymMatrix partial_trace(const SymMatrix& m, int k);

// Compressed (uu^T)^{x d}; unit trace for unit u.
SymMatrix rank_one_power(const Eigen::VectorXd& u, int d);

double frob_inner(const SymMatrix& a, const SymMatrix& b);

}  // namespace sphier
