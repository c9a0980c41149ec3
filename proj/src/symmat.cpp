#include "sphier/symmat.hpp"

#include <cmath>
#include <stdexcept>

namespace sphier {

namespace {
// sqrt(C(d, alpha)) per basis element
Eigen::VectorXd sqrt_multinomials(const MonomialBasis& b) {
  Eigen::VectorXd s(b.size());
  for (int i = 0; i < b.size(); ++i)
    s(i) = std::sqrt(static_cast<double>(multinomial(b[i])));
  return s;
}
}  // namespace

SymMatrix::SymMatrix(int n, int d) : n_(n), d_(d), basis_(shared_basis(n, d)) {
  mat_ = Eigen::MatrixXd::Zero(basis_->size(), basis_->size());
}

SymMatrix SymMatrix::identity(int n, int d) {
  SymMatrix m(n, d);
  m.mat_.setIdentity();
  return m;
}

MaxSymMatrix::MaxSymMatrix(int n, int d) : n_(n), d_(d), basis2d_(shared_basis(n, 2 * d)) {
  y_ = Eigen::VectorXd::Zero(basis2d_->size());
}

SymMatrix MaxSymMatrix::as_sym_matrix() const {
  SymMatrix out(n_, d_);
  const MonomialBasis& b = out.basis();
  Eigen::VectorXd s = sqrt_multinomials(b);
  for (int i = 0; i < b.size(); ++i)
    for (int j = i; j < b.size(); ++j) {
      double v = s(i) * s(j) * y_(basis2d_->rank(add(b[i], b[j])));
      out.mat()(i, j) = v;
      out.mat()(j, i) = v;
    }
  return out;
}

MaxSymMatrix maxsym_of_form(const Form& f) {
  if (f.degree() % 2 != 0)
    throw std::invalid_argument("maxsym_of_form: degree must be even");
  MaxSymMatrix m(f.n(), f.degree() / 2);
  for (auto& [g, c] : f.terms())
    m.set_moment(g, c / static_cast<double>(multinomial(g)));
  return m;
}

Form form_of_maxsym(const MaxSymMatrix& m) {
  Form f(m.n(), 2 * m.d());
  const MonomialBasis& b2 = m.moment_basis();
  for (int i = 0; i < b2.size(); ++i) {
    double y = m.moments()(i);
    if (y != 0.0) f.set_coeff(b2[i], y * static_cast<double>(multinomial(b2[i])));
  }
  return f;
}

Form form_of_gram(const SymMatrix& g) {
  const MonomialBasis& b = g.basis();
  Eigen::VectorXd s = sqrt_multinomials(b);
  Form f(g.n(), 2 * g.d());
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      double v = s(i) * s(j) * g.mat()(i, j);
      if (v != 0.0) f.add_coeff(add(b[i], b[j]), v);
    }
  return f;
}

MaxSymMatrix maxsym_project(const SymMatrix& g) {
  const MonomialBasis& b = g.basis();
  Eigen::VectorXd s = sqrt_multinomials(b);
  MaxSymMatrix out(g.n(), g.d());
  const MonomialBasis& b2 = out.moment_basis();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(b2.size());
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      acc(b2.rank(add(b[i], b[j]))) += s(i) * s(j) * g.mat()(i, j);
  // sum of weights C(d,a)C(d,b) over a+b=gamma telescopes to C(2d,gamma)
  for (int t = 0; t < b2.size(); ++t)
    out.moments()(t) = acc(t) / static_cast<double>(multinomial(b2[t]));
  return out;
}

SymMatrix sym_lift(const SymMatrix& a, int k, long long cap) {
  if (k < 0) throw std::invalid_argument("sym_lift: k must be >= 0");
  int n = a.n(), d = a.d(), r = d + k;
  if (dim_sym(n, r) > cap)
    throw std::length_error("sym_lift: dim_sym(n, d+k) = " + std::to_string(dim_sym(n, r)) +
                            " exceeds cap " + std::to_string(cap));
  SymMatrix out(n, r);
  const MonomialBasis& br = out.basis();
  const MonomialBasis& bd = a.basis();
  auto bk = shared_basis(n, k);
  Eigen::VectorXd sd = sqrt_multinomials(bd);
  Eigen::VectorXd sr = sqrt_multinomials(br);
  std::vector<double> ck(static_cast<size_t>(bk->size()));
  for (int m = 0; m < bk->size(); ++m)
    ck[static_cast<size_t>(m)] = static_cast<double>(multinomial((*bk)[m]));

  MultiIndex ai, bj;
  for (int i = 0; i < br.size(); ++i) {
    for (int j = i; j < br.size(); ++j) {
      double acc = 0;
      for (int m = 0; m < bk->size(); ++m) {
        if (!try_sub(br[i], (*bk)[m], ai)) continue;
        if (!try_sub(br[j], (*bk)[m], bj)) continue;
        int ia = bd.rank(ai), ib = bd.rank(bj);
        acc += ck[static_cast<size_t>(m)] * sd(ia) * sd(ib) * a.mat()(ia, ib);
      }
      double v = acc / (sr(i) * sr(j));
      out.mat()(i, j) = v;
      out.mat()(j, i) = v;
    }
  }
  return out;
}

SymMatrix partial_trace(const SymMatrix& m, int k) {
  int n = m.n(), r = m.d();
  if (k < 0 || k > r) throw std::invalid_argument("partial_trace: need 0 <= k <= r");
  SymMatrix out(n, r - k);
  const MonomialBasis& bo = out.basis();
  const MonomialBasis& br = m.basis();
  auto bk = shared_basis(n, k);
  Eigen::VectorXd so = sqrt_multinomials(bo);
  Eigen::VectorXd sr = sqrt_multinomials(br);
  for (int i = 0; i < bo.size(); ++i) {
    for (int j = i; j < bo.size(); ++j) {
      double acc = 0;
      for (int t = 0; t < bk->size(); ++t) {
        const MultiIndex& mu = (*bk)[t];
        int ia = br.rank(add(bo[i], mu));
        int ib = br.rank(add(bo[j], mu));
        acc += static_cast<double>(multinomial(mu)) * m.mat()(ia, ib) / (sr(ia) * sr(ib));
      }
      double v = so(i) * so(j) * acc;
      out.mat()(i, j) = v;
      out.mat()(j, i) = v;
    }
  }
  return out;
}

SymMatrix rank_one_power(const Eigen::VectorXd& u, int d) {
  int n = static_cast<int>(u.size());
  SymMatrix out(n, d);
  const MonomialBasis& b = out.basis();
  Eigen::VectorXd h(b.size());
  for (int i = 0; i < b.size(); ++i) {
    double v = std::sqrt(static_cast<double>(multinomial(b[i])));
    for (int t = 0; t < n; ++t)
      for (int p = 0; p < b[i][t]; ++p) v *= u(t);
    h(i) = v;
  }
  out.mat() = h * h.transpose();
  return out;
}

double frob_inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.n() != b.n() || a.d() != b.d()) throw std::invalid_argument("frob_inner: mismatch");
  return a.mat().cwiseProduct(b.mat()).sum();
}

}  // namespace sphier
