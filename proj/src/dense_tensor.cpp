#include "sphier/dense_tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace sphier {

long long DenseTensorMatrix::checked_dim(int n, int r) {
  if (n < 1 || r < 0) throw std::invalid_argument("DenseTensorMatrix: need n >= 1, r >= 0");
  long long dim = 1;
  for (int i = 0; i < r; ++i) {
    dim *= n;
    if (dim > 4096) throw std::length_error("DenseTensorMatrix: n^r exceeds 4096");
  }
  return dim;
}

DenseTensorMatrix::DenseTensorMatrix(int n, int r) : n_(n), r_(r) {
  long long dim = checked_dim(n, r);
  mat_ = Eigen::MatrixXcd::Zero(dim, dim);
  counts_.reserve(static_cast<size_t>(dim));
  for (long long idx = 0; idx < dim; ++idx) counts_.push_back(multi_of_tensor(sequence(idx), n));
}

std::vector<int> DenseTensorMatrix::sequence(Eigen::Index idx) const {
  std::vector<int> seq(static_cast<size_t>(r_));
  for (int k = r_ - 1; k >= 0; --k) {
    seq[static_cast<size_t>(k)] = static_cast<int>(idx % n_);
    idx /= n_;
  }
  return seq;
}

Eigen::Index DenseTensorMatrix::index_of(const std::vector<int>& seq) const {
  if (static_cast<int>(seq.size()) != r_)
    throw std::invalid_argument("index_of: wrong sequence length");
  Eigen::Index idx = 0;
  for (int v : seq) {
    if (v < 0 || v >= n_) throw std::out_of_range("index_of: digit out of range");
    idx = idx * n_ + v;
  }
  return idx;
}

DenseTensorMatrix DenseTensorMatrix::partial_transpose(int reg) const {
  if (reg < 0 || reg >= r_) throw std::invalid_argument("partial_transpose: bad register");
  DenseTensorMatrix out(n_, r_);
  for (Eigen::Index i = 0; i < dim(); ++i) {
    std::vector<int> si = sequence(i);
    for (Eigen::Index j = 0; j < dim(); ++j) {
      std::vector<int> sj = sequence(j);
      std::vector<int> si2 = si, sj2 = sj;
      std::swap(si2[static_cast<size_t>(reg)], sj2[static_cast<size_t>(reg)]);
      out.mat()(i, j) = mat_(index_of(si2), index_of(sj2));
    }
  }
  return out;
}

DenseTensorMatrix DenseTensorMatrix::partial_trace_last(int k) const {
  if (k < 0 || k > r_) throw std::invalid_argument("partial_trace_last: need 0 <= k <= r");
  DenseTensorMatrix out(n_, r_ - k);
  Eigen::Index tail = 1;
  for (int i = 0; i < k; ++i) tail *= n_;
  for (Eigen::Index a = 0; a < out.dim(); ++a)
    for (Eigen::Index b = 0; b < out.dim(); ++b) {
      std::complex<double> acc = 0;
      for (Eigen::Index w = 0; w < tail; ++w) acc += mat_(a * tail + w, b * tail + w);
      out.mat()(a, b) = acc;
    }
  return out;
}

DenseTensorMatrix rank_one_power_dense(const Eigen::VectorXcd& u, int r) {
  int n = static_cast<int>(u.size());
  DenseTensorMatrix out(n, r);
  Eigen::VectorXcd pw(out.dim());
  for (Eigen::Index idx = 0; idx < out.dim(); ++idx) {
    std::complex<double> v = 1.0;
    for (int dgt : out.sequence(idx)) v *= u(dgt);
    pw(idx) = v;
  }
  out.mat() = pw * pw.adjoint();
  return out;
}

DenseTensorMatrix tensor_power_dense(const Eigen::MatrixXcd& a, int r) {
  if (a.rows() != a.cols()) throw std::invalid_argument("tensor_power_dense: square input only");
  int n = static_cast<int>(a.rows());
  DenseTensorMatrix out(n, r);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
  for (int t = 0; t < r; ++t) {
    Eigen::MatrixXcd next(acc.rows() * n, acc.cols() * n);
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (Eigen::Index j = 0; j < acc.cols(); ++j)
        next.block(i * n, j * n, n, n) = acc(i, j) * a;
    acc.swap(next);
  }
  out.mat() = acc;
  return out;
}

SymMatrix compress(const DenseTensorMatrix& x, double tol) {
  int n = x.n(), d = x.r();
  SymMatrix out(n, d);
  const MonomialBasis& b = out.basis();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(b.size(), b.size());
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    int a = b.rank(x.counts(i));
    for (Eigen::Index j = 0; j < x.dim(); ++j)
      acc(a, b.rank(x.counts(j))) += x.mat()(i, j);
  }
  double imax = acc.imag().cwiseAbs().maxCoeff();
  double scale = 1.0 + acc.cwiseAbs().maxCoeff();
  if (imax > tol * scale)
    throw std::invalid_argument("compress: input has non-real symmetric part");
  for (int a = 0; a < b.size(); ++a) {
    double sa = std::sqrt(static_cast<double>(multinomial(b[a])));
    for (int c = 0; c < b.size(); ++c) {
      double sc = std::sqrt(static_cast<double>(multinomial(b[c])));
      out.mat()(a, c) = acc(a, c).real() / (sa * sc);
    }
  }
  return out;
}

DenseTensorMatrix decompress(const SymMatrix& g) {
  DenseTensorMatrix out(g.n(), g.d());
  const MonomialBasis& b = g.basis();
  Eigen::VectorXd inv_s(b.size());
  for (int i = 0; i < b.size(); ++i)
    inv_s(i) = 1.0 / std::sqrt(static_cast<double>(multinomial(b[i])));
  for (Eigen::Index i = 0; i < out.dim(); ++i) {
    int a = b.rank(out.counts(i));
    for (Eigen::Index j = 0; j < out.dim(); ++j) {
      int c = b.rank(out.counts(j));
      out.mat()(i, j) = g.mat()(a, c) * inv_s(a) * inv_s(c);
    }
  }
  return out;
}

MaxSymMatrix maxsym_project_dense(const DenseTensorMatrix& x, double* imag_out) {
  int n = x.n(), r = x.r();
  MaxSymMatrix out(n, r);
  const MonomialBasis& b2 = out.moment_basis();
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(b2.size());
  for (Eigen::Index i = 0; i < x.dim(); ++i)
    for (Eigen::Index j = 0; j < x.dim(); ++j)
      acc(b2.rank(add(x.counts(i), x.counts(j)))) += x.mat()(i, j);
  double imax = 0;
  for (int t = 0; t < b2.size(); ++t) {
    std::complex<double> y = acc(t) / static_cast<double>(multinomial(b2[t]));
    imax = std::max(imax, std::fabs(y.imag()));
    out.moments()(t) = y.real();
  }
  if (imag_out) *imag_out = imax;
  return out;
}

DenseTensorMatrix dense_of_maxsym(const MaxSymMatrix& m) {
  DenseTensorMatrix out(m.n(), m.d());
  for (Eigen::Index i = 0; i < out.dim(); ++i)
    for (Eigen::Index j = 0; j < out.dim(); ++j)
      out.mat()(i, j) = m.moment(add(out.counts(i), out.counts(j)));
  return out;
}

}  // namespace sphier
