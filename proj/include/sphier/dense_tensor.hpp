#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sphier/symmat.hpp"

namespace sphier {

// Dense matrix over [n]^r x [n]^r, sequences enumerated row-major (first
// register most significant).  Guarded by an n^r <= 4096 cap: this type
// exists for small exact constructions and oracle checks.
class DenseTensorMatrix {
 public:
  DenseTensorMatrix(int n, int r);

  int n() const { return n_; }
  int r() const { return r_; }
  Eigen::Index dim() const { return mat_.rows(); }
  Eigen::MatrixXcd& mat() { return mat_; }
  const Eigen::MatrixXcd& mat() const { return mat_; }

  // digits of a row index, most significant first
  std::vector<int> sequence(Eigen::Index idx) const;
  Eigen::Index index_of(const std::vector<int>& seq) const;
  const MultiIndex& counts(Eigen::Index idx) const { return counts_[static_cast<size_t>(idx)]; }

  // swap register reg (0-based) between row and column sequences
  DenseTensorMatrix partial_transpose(int reg) const;
  // trace out the last k registers
  DenseTensorMatrix partial_trace_last(int k) const;

  double max_imag() const { return mat_.imag().cwiseAbs().maxCoeff(); }
  bool is_hermitian(double tol) const { return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol; }

  static long long checked_dim(int n, int r);  // n^r, throws past the cap

 private:
  int n_, r_;
  Eigen::MatrixXcd mat_;
  std::vector<MultiIndex> counts_;
};

// (uu*)^{x r} for complex u; (uu^T)^{x r} when u is real.
DenseTensorMatrix rank_one_power_dense(const Eigen::VectorXcd& u, int r);
// A^{x r} by repeated Kronecker product
DenseTensorMatrix tensor_power_dense(const Eigen::MatrixXcd& a, int r);

// B^T X B with B the orthonormal symmetric-subspace basis; equals the
// count-class average scaled by sqrt(C(d,a)C(d,b)).  Requires imag <= tol.
SymMatrix compress(const DenseTensorMatrix& x, double tol = 1e-10);
DenseTensorMatrix decompress(const SymMatrix& g);

// Orbit average of vec(X) over all (2r)! index permutations, computed by
// count-class sums; optionally reports the largest imaginary residue.
MaxSymMatrix maxsym_project_dense(const DenseTensorMatrix& x, double* imag_out = nullptr);
DenseTensorMatrix dense_of_maxsym(const MaxSymMatrix& m);

}  // namespace sphier
