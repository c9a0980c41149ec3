#include "sphier/harmonic.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace sphier {

namespace {
// Solve T(g) = laplacian(f) for g of degree 2r-2, where T(g) = laplacian(s*g).
// T = 2(n + 2 deg g) I + s∘laplacian is positive definite on forms, so the
// square system is uniquely solvable and f - s*g is harmonic.
Form peel_multiplier(const Form& f) {
  int n = f.n();
  int m = f.degree() - 2;  // degree of g
  MonomialBasis basis(n, m);
  int N = basis.size();
  Form s = s_power(n, 1);
  Eigen::MatrixXd T(N, N);
  for (int j = 0; j < N; ++j) {
    Form unit(n, m);
    unit.set_coeff(basis[j], 1.0);
    Form col = (s * unit).laplacian();
    for (int i = 0; i < N; ++i) T(i, j) = col.coeff(basis[i]);
  }
  Form lf = f.laplacian();
  Eigen::VectorXd rhs(N);
  for (int i = 0; i < N; ++i) rhs(i) = lf.coeff(basis[i]);
  Eigen::VectorXd g = T.partialPivLu().solve(rhs);
  double resid = (T * g - rhs).cwiseAbs().maxCoeff();
  double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
  if (!(resid <= 1e-8 * scale))
    throw std::logic_error("harmonic_decompose: singular peel system");
  Form out(n, m);
  for (int i = 0; i < N; ++i) out.set_coeff(basis[i], g(i));
  return out;
}
}  // namespace

HarmonicDecomposition harmonic_decompose(const Form& f) {
  if (f.degree() % 2 != 0)
    throw std::invalid_argument("harmonic_decompose: degree must be even");
  int r = f.degree() / 2;
  HarmonicDecomposition dec;
  dec.components.assign(static_cast<size_t>(r) + 1, Form());
  Form cur = f;
  for (int k = r; k >= 1; --k) {
    Form g = peel_multiplier(cur);
    Form h = cur - s_power(f.n(), 1) * g;
    dec.components[static_cast<size_t>(k)] = h.pruned(0.0);
    cur = g;
  }
  dec.components[0] = cur;
  return dec;
}

Form recompose(const HarmonicDecomposition& dec) {
  if (dec.components.empty()) throw std::invalid_argument("recompose: empty decomposition");
  int r = static_cast<int>(dec.components.size()) - 1;
  int n = dec.components[0].n();
  Form acc(n, 2 * r);
  for (int k = 0; k <= r; ++k) {
    const Form& h = dec.components[static_cast<size_t>(k)];
    if (h.is_zero()) continue;
    acc += s_power(n, r - k) * h;
  }
  return acc;
}

}  // namespace sphier
