#include "sphier/hierarchy.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sphier/linalg.hpp"
#include "sphier/parallel.hpp"
#include "sphier/sphere_opt.hpp"

namespace sphier {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

int half_degree(const Form& p, const char* who) {
  if (p.degree() % 2 != 0)
    throw std::invalid_argument(std::string(who) + ": form degree must be even");
  return p.degree() / 2;
}

}  // namespace

std::pair<SymMatrix, SymMatrix> build_Qr_Mr(const Form& p, int r, int size_cap) {
  int d = half_degree(p, "build_Qr_Mr");
  if (r < d) throw std::invalid_argument("build_Qr_Mr: level r below half the degree");
  if (dim_sym(p.n(), r) > size_cap)
    throw std::length_error("build_Qr_Mr: pencil dimension " +
                            std::to_string(dim_sym(p.n(), r)) + " exceeds cap " +
                            std::to_string(size_cap));
  SymMatrix qd = maxsym_of_form(p).as_sym_matrix();
  SymMatrix md = maxsym_of_form(s_power(p.n(), d)).as_sym_matrix();
  return {sym_lift(qd, r - d, size_cap), sym_lift(md, r - d, size_cap)};
}

BoundReport spectral_bound(const Form& p, int r, int size_cap) {
  auto t0 = clock_type::now();
  auto [qr, mr] = build_Qr_Mr(p, r, size_cap);
  BoundReport rep;
  rep.r = r;
  rep.method = "spectral";
  rep.matrix_size = static_cast<int>(qr.size());
  VectorXd ev = eig_sym_values(mr.mat());
  rep.lambda_min_M = ev.minCoeff();
  rep.lambda_max_M = ev.maxCoeff();
  rep.value = gen_eig_min(qr.mat(), mr.mat());
  rep.wall_ms = ms_since(t0);
  return rep;
}

SosSdp assemble_sos_sdp(const Form& p, int r, int gram_cap) {
  int d = half_degree(p, "sos_bound");
  if (r < d) throw std::invalid_argument("sos_bound: level r below half the degree");
  const int n = p.n();
  const long long nn = dim_sym(n, r);
  if (nn > gram_cap)
    throw std::length_error("sos_bound: Gram side " + std::to_string(nn) + " exceeds cap " +
                            std::to_string(gram_cap));
  const int N = static_cast<int>(nn);
  auto basis_r = shared_basis(n, r);
  auto basis_2r = shared_basis(n, 2 * r);

  Form spr = s_power(n, r - d) * p;
  double scale = 0;
  for (const auto& [idx, c] : spr.terms()) scale = std::max(scale, std::abs(c));
  if (scale == 0) scale = 1;

  // Unordered Gram slots grouped by the monomial they feed; the first slot of
  // each group is the pivot eliminated by the equality constraint.
  struct Slot {
    int i, j;
    double w;  // ordered multiplicity: 2 off the diagonal, 1 on it
  };
  std::vector<std::vector<Slot>> groups(basis_2r->size());
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      int g = basis_2r->rank(add((*basis_r)[i], (*basis_r)[j]));
      groups[g].push_back({i, j, i == j ? 1.0 : 2.0});
    }

  SosSdp out;
  out.scale = scale;
  SdpProblem& prob = out.problem;
  prob.F0 = MatrixXd::Zero(N, N);
  MatrixXd t_mat = MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i)
    t_mat(i, i) = static_cast<double>(multinomial(r, (*basis_r)[i]));
  prob.Fs.push_back(-t_mat);
  for (size_t g = 0; g < groups.size(); ++g) {
    const auto& slots = groups[g];
    if (slots.empty())
      throw std::logic_error("sos_bound: monomial with no Gram slot");
    double wsum = 0;
    for (const auto& s : slots) wsum += s.w;
    double cg = spr.coeff((*basis_2r)[g]) / scale;
    for (const auto& s : slots) prob.F0(s.i, s.j) = prob.F0(s.j, s.i) = cg / wsum;
    for (size_t k = 1; k < slots.size(); ++k) {
      MatrixXd b = MatrixXd::Zero(N, N);
      b(slots[k].i, slots[k].j) = b(slots[k].j, slots[k].i) = 1.0;
      double pull = -slots[k].w / slots[0].w;
      b(slots[0].i, slots[0].j) += pull;
      if (slots[0].i != slots[0].j) b(slots[0].j, slots[0].i) += pull;
      prob.Fs.push_back(std::move(b));
    }
  }
  prob.b = VectorXd::Zero(static_cast<long>(prob.Fs.size()));
  prob.b[0] = 1;
  return out;
}

BoundReport sos_bound(const Form& p, int r, const SdpOptions& opt, int gram_cap,
                      Eigen::MatrixXd* gram_out) {
  auto t0 = clock_type::now();
  int d = half_degree(p, "sos_bound");
  const int n = p.n();

  SosSdp sdp = assemble_sos_sdp(p, r, gram_cap);
  const SdpProblem& prob = sdp.problem;
  const double scale = sdp.scale;
  const int N = static_cast<int>(prob.F0.rows());
  const int m = static_cast<int>(prob.Fs.size());
  auto basis_r = shared_basis(n, r);

  Form spr = s_power(n, r - d) * p;
  Form srn = s_power(n, r);

  SdpSolution sol = solve_sdp(prob, opt);

  BoundReport rep;
  rep.r = r;
  rep.method = "sos";
  rep.matrix_size = N;
  rep.num_vars = m;
  rep.status = sol.status;
  rep.value = sol.y.size() > 0 ? sol.y[0] * scale : 0.0;

  // Audit the certificate: reassemble the Gram matrix exactly from y and
  // re-expand it against the constrained polynomial.
  MatrixXd gram = prob.F0;
  for (int i = 0; i < m; ++i) gram += sol.y[i] * prob.Fs[i];
  gram *= scale;
  if (gram_out) *gram_out = gram;
  rep.gram_min_eig = eig_sym_values(gram).minCoeff();
  Form recon(n, 2 * r);
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j)
      recon.add_coeff(add((*basis_r)[i], (*basis_r)[j]),
                      (i == j ? 1.0 : 2.0) * gram(i, j));
  Form target = spr;
  target += (-rep.value) * srn;
  rep.gram_residual = max_coeff_diff(recon, target);
  rep.wall_ms = ms_since(t0);
  return rep;
}

Form choi_lam() {
  Form f(4, 4);
  f.set_coeff(MultiIndex{2, 2, 0, 0}, 1);
  f.set_coeff(MultiIndex{2, 0, 2, 0}, 1);
  f.set_coeff(MultiIndex{0, 2, 2, 0}, 1);
  f.set_coeff(MultiIndex{0, 0, 0, 4}, 1);
  f.set_coeff(MultiIndex{1, 1, 1, 1}, -4);
  return f;
}

Form embed(const Form& p, int n_new) {
  if (n_new < p.n()) throw std::invalid_argument("embed: cannot drop variables");
  Form out(n_new, p.degree());
  for (const auto& [idx, c] : p.terms()) {
    std::vector<int> e = idx.e;
    e.resize(n_new, 0);
    out.set_coeff(MultiIndex{std::move(e)}, c);
  }
  return out;
}

double gamma_const(const Form& p, double p_min) {
  int d = half_degree(p, "gamma_const");
  SymMatrix q = maxsym_of_form(p).as_sym_matrix();
  VectorXd ev = eig_sym_values(q.mat());
  double spd = spectral_bound(p, d).value;
  return std::max(ev.maxCoeff() - spd, p_min - ev.minCoeff());
}

double gamma_const(const Form& p) {
  return gamma_const(p, sphere_extrema_estimate(p).min_value);
}

namespace {

double real_binomial(double x, int k) {
  double out = 1;
  for (int i = 1; i <= k; ++i) out *= (x - k + i) / i;
  return out;
}

}  // namespace

KappaReport kappa_report(int n, int d) {
  KappaReport rep;
  rep.n = n;
  rep.d = d;
  SymMatrix md = maxsym_of_form(s_power(n, d)).as_sym_matrix();
  VectorXd ev = eig_sym_values(md.mat());
  rep.lambda_min = ev.minCoeff();
  rep.lambda_max = ev.maxCoeff();
  rep.kappa = rep.lambda_max / rep.lambda_min;
  rep.conjectured = real_binomial(n / 2.0 + d - 1, d / 2);
  return rep;
}

ChoiLamResult choi_lam_experiment(int r_max, int sos_r_max, int threads) {
  if (r_max < 2) throw std::invalid_argument("choi_lam_experiment: r_max must be at least 2");
  Form p5 = embed(choi_lam(), 5);
  ChoiLamResult res;
  SymMatrix m2 = maxsym_of_form(s_power(5, 2)).as_sym_matrix();
  VectorXd ev = eig_sym_values(m2.mat());
  res.lambda_min_M = ev.minCoeff();
  res.lambda_max_M = ev.maxCoeff();

  res.rows.resize(r_max - 1);
  std::vector<std::function<void()>> tasks;
  for (int r = 2; r <= r_max; ++r) {
    ChoiLamRow* row = &res.rows[r - 2];
    row->r = r;
    tasks.push_back([row, r, sos_r_max, &p5] {
      row->spectral = spectral_bound(p5, r);
      if (r <= sos_r_max) row->sos = sos_bound(p5, r);
    });
  }
  parallel_run(std::move(tasks), threads);

  res.sp2 = res.rows[0].spectral.value;
  double ratio = res.lambda_min_M / res.lambda_max_M;
  res.all_pass = true;
  for (auto& row : res.rows) {
    row.floor = ratio * std::abs(res.sp2) / static_cast<double>(binom(row.r, 2));
    row.spectral.floor = row.floor;
    row.pass = row.spectral.value < 0 &&
               std::abs(row.spectral.value) >= row.floor - 1e-9;
    res.all_pass = res.all_pass && row.pass;
  }
  return res;
}

}  // namespace sphier
