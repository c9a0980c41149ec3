#include "sphier/definetti.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "sphier/linalg.hpp"
#include "sphier/parallel.hpp"
#include "sphier/rng.hpp"
#include "sphier/sphere_opt.hpp"

namespace sphier {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// min ||A - sum w_i B_i||^2 over w >= 0, given only the Gram data
// G_ij = <B_i, B_j> and c_i = <A, B_i> (Lawson-Hanson active set on the
// normal equations).
VectorXd nnls_gram(const MatrixXd& g, const VectorXd& c) {
  const int k = static_cast<int>(c.size());
  VectorXd w = VectorXd::Zero(k);
  std::vector<bool> active(k, false);
  double scale = std::max(1.0, g.diagonal().maxCoeff());
  const double tol = 1e-12 * scale;

  auto solve_active = [&](const std::vector<int>& idx) {
    MatrixXd gp(idx.size(), idx.size());
    VectorXd cp(idx.size());
    for (size_t a = 0; a < idx.size(); ++a) {
      cp[a] = c[idx[a]];
      for (size_t b = 0; b < idx.size(); ++b) gp(a, b) = g(idx[a], idx[b]);
    }
    // tiny ridge keeps nearly parallel atoms from breaking the factorization
    gp.diagonal().array() += 1e-14 * scale;
    return VectorXd(gp.ldlt().solve(cp));
  };

  for (int outer = 0; outer < 50 * k + 50; ++outer) {
    VectorXd grad = c - g * w;
    int best = -1;
    double best_val = tol;
    for (int i = 0; i < k; ++i)
      if (!active[i] && grad[i] > best_val) best_val = grad[i], best = i;
    if (best < 0) break;
    active[best] = true;

    for (int inner = 0; inner < 50 * k + 50; ++inner) {
      std::vector<int> idx;
      for (int i = 0; i < k; ++i)
        if (active[i]) idx.push_back(i);
      VectorXd z = solve_active(idx);
      bool all_pos = true;
      for (int a = 0; a < z.size(); ++a)
        if (z[a] <= 0) all_pos = false;
      if (all_pos) {
        w.setZero();
        for (size_t a = 0; a < idx.size(); ++a) w[idx[a]] = z[a];
        break;
      }
      double step = 1.0;
      for (size_t a = 0; a < idx.size(); ++a)
        if (z[a] <= 0) step = std::min(step, w[idx[a]] / (w[idx[a]] - z[a]));
      for (size_t a = 0; a < idx.size(); ++a) {
        w[idx[a]] += step * (z[a] - w[idx[a]]);
        if (w[idx[a]] <= tol) {
          w[idx[a]] = 0;
          active[idx[a]] = false;
        }
      }
    }
  }
  return w;
}

SymMatrix wrap_sym(int n, int d, const MatrixXd& m) {
  SymMatrix out(n, d);
  out.mat() = m;
  return out;
}

// Joint local refinement of an atomic fit by Levenberg-Marquardt.  Each
// contribution is parameterized as the compressed power of an unnormalized
// vector a in R^n, so the weight |a|^{2d} stays nonnegative for free and the
// least-squares problem is smooth and unconstrained.  Near a zero-residual
// decomposition this converges quadratically where the alternating
// atom-by-atom update stalls.
void lm_refine(const MatrixXd& target, int n, int d, std::vector<Eigen::VectorXd>& atoms,
               std::vector<double>& weights) {
  const int k = static_cast<int>(atoms.size());
  if (k == 0) return;
  const int m = static_cast<int>(target.size());
  const double scale = 1 + target.norm();

  VectorXd theta(k * n);
  for (int i = 0; i < k; ++i)
    theta.segment(i * n, n) = atoms[i] * std::pow(weights[i], 0.5 / d);

  auto resid = [&](const VectorXd& th) {
    MatrixXd fit = MatrixXd::Zero(target.rows(), target.cols());
    for (int i = 0; i < k; ++i) fit += rank_one_power(th.segment(i * n, n), d).mat();
    MatrixXd diff = target - fit;
    return VectorXd(Eigen::Map<const VectorXd>(diff.data(), m));
  };

  VectorXd r = resid(theta);
  double rnorm = r.norm();
  double lambda = -1;
  for (int iter = 0; iter < 60; ++iter) {
    MatrixXd jac(m, k * n);
    for (int p = 0; p < k * n; ++p) {
      const double eps = 1e-6 * (1 + std::abs(theta[p]));
      VectorXd tp = theta, tm = theta;
      tp[p] += eps;
      tm[p] -= eps;
      jac.col(p) = (resid(tp) - resid(tm)) / (2 * eps);
    }
    MatrixXd h = jac.transpose() * jac;
    VectorXd g = jac.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() < 1e-14 * scale) break;
    if (lambda < 0) lambda = 1e-3 * h.trace() / (k * n);

    bool stepped = false;
    for (int tries = 0; tries < 12 && !stepped; ++tries) {
      MatrixXd hl = h;
      hl.diagonal().array() += lambda;
      VectorXd trial = theta + VectorXd(hl.ldlt().solve(-g));
      VectorXd rt = resid(trial);
      if (rt.norm() < rnorm) {
        theta = trial;
        r = std::move(rt);
        stepped = true;
        lambda = std::max(lambda * 0.3, 1e-14);
      } else {
        lambda *= 10;
      }
    }
    double improvement = rnorm - r.norm();
    rnorm = r.norm();
    if (!stepped || improvement < 1e-14 * scale) break;
  }

  for (int i = 0; i < k; ++i) {
    double na = theta.segment(i * n, n).norm();
    if (na < 1e-12) {
      weights[i] = 0;
    } else {
      atoms[i] = theta.segment(i * n, n) / na;
      weights[i] = std::pow(na, 2 * d);
    }
  }
}

}  // namespace

DenseTensorMatrix rho_r(int r) {
  if (r < 2) throw std::invalid_argument("rho_r: r must be at least 2");
  Eigen::VectorXcd u(2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  u << std::complex<double>(inv_sqrt2, 0), std::complex<double>(0, inv_sqrt2);
  DenseTensorMatrix a = rank_one_power_dense(u, r);
  DenseTensorMatrix b = rank_one_power_dense(u.conjugate(), r);
  DenseTensorMatrix out(2, r);
  out.mat() = 0.5 * (a.mat() + b.mat());
  return out;
}

MaxsymDistance maxsym_distance(const DenseTensorMatrix& m) {
  DenseTensorMatrix proj = dense_of_maxsym(maxsym_project_dense(m));
  Eigen::MatrixXcd diff = m.mat() - proj.mat();
  return {schatten_norm(diff, 1), diff.norm()};
}

MaxsymDistance maxsym_distance(const SymMatrix& m) {
  MatrixXd diff = m.mat() - maxsym_project(m).as_sym_matrix().mat();
  return {schatten_norm(diff, 1), diff.norm()};
}

LmoResult separable_lmo(const SymMatrix& g, int restarts, uint64_t seed,
                        const std::vector<Eigen::VectorXd>& warm_starts) {
  if (restarts < 1) throw std::invalid_argument("separable_lmo: restarts must be positive");
  auto [value, u] = sphere_maximize(form_of_gram(g), restarts, seed, warm_starts);
  return {u, value};
}

SeparableDecomposition separable_approx(const MaxSymMatrix& a, int max_atoms, uint64_t seed,
                                        int lmo_restarts) {
  const int n = a.n(), d = a.d();
  SymMatrix target = a.as_sym_matrix();
  const double target_scale = std::max(1.0, target.mat().norm());

  SeparableDecomposition dec{.weights = {},
                             .atoms = {},
                             .induced = SymMatrix(n, d),
                             .alpha = 0,
                             .schatten1 = 0,
                             .frobenius = 0,
                             .iterations = 0};
  MatrixXd x = MatrixXd::Zero(target.size(), target.size());
  double prev_frob = (target.mat() - x).norm();

  // Nonnegative refit of all weights, drop dead atoms, rebuild the fit.
  auto refit_weights = [&]() {
    const int k = static_cast<int>(dec.atoms.size());
    std::vector<SymMatrix> powered;
    powered.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) powered.push_back(rank_one_power(dec.atoms[i], d));
    MatrixXd gram(k, k);
    VectorXd rhs(k);
    for (int i = 0; i < k; ++i) {
      rhs[i] = target.mat().cwiseProduct(powered[i].mat()).sum();
      for (int j = 0; j < k; ++j)
        gram(i, j) = std::pow(dec.atoms[i].dot(dec.atoms[j]), 2 * d);
    }
    VectorXd w = nnls_gram(gram, rhs);
    std::vector<Eigen::VectorXd> kept_atoms;
    std::vector<double> kept_w;
    x.setZero();
    for (int i = 0; i < k; ++i) {
      if (w[i] <= 1e-14) continue;
      kept_atoms.push_back(dec.atoms[i]);
      kept_w.push_back(w[i]);
      x += w[i] * powered[i].mat();
    }
    dec.atoms = std::move(kept_atoms);
    dec.weights = std::move(kept_w);
  };

  // Collapse projectively aligned atoms (B(u) = B(-u)) whose merge error
  // (wa+wb)(1-|dot|) is negligible against the current residual.  Clusters of
  // near-duplicates otherwise keep the refinement ill-conditioned.
  auto merge_close_atoms = [&](double frob) {
    bool merged = false;
    for (size_t a = 0; a < dec.atoms.size(); ++a) {
      for (size_t b = a + 1; b < dec.atoms.size();) {
        double dot = dec.atoms[a].dot(dec.atoms[b]);
        double wa = dec.weights[a], wb = dec.weights[b];
        if (std::abs(dot) >= 0.9 && (wa + wb) * (1.0 - std::abs(dot)) <= 10 * frob) {
          Eigen::VectorXd m = wa * dec.atoms[a] + (dot < 0 ? -wb : wb) * dec.atoms[b];
          if (m.norm() > 1e-12) {
            dec.atoms[a] = m.normalized();
            dec.weights[a] += wb;
            dec.atoms.erase(dec.atoms.begin() + static_cast<long>(b));
            dec.weights.erase(dec.weights.begin() + static_cast<long>(b));
            merged = true;
            continue;
          }
        }
        ++b;
      }
    }
    return merged;
  };

  int stalls = 0;
  for (int it = 1; it <= max_atoms; ++it) {
    dec.iterations = it;
    SymMatrix residual = wrap_sym(n, d, target.mat() - x);
    LmoResult lmo =
        separable_lmo(residual, lmo_restarts, seed + 0x9e3779b97f4a7c15ULL * it, dec.atoms);
    if (lmo.value <= 1e-13 * target_scale) break;  // no improving atom in the cone

    dec.atoms.push_back(lmo.u);
    dec.weights.push_back(0);
    refit_weights();
    merge_close_atoms((target.mat() - x).norm());
    lm_refine(target.mat(), n, d, dec.atoms, dec.weights);
    refit_weights();

    double frob = (target.mat() - x).norm();
    stalls = prev_frob - frob < 1e-12 * (1 + target_scale) ? stalls + 1 : 0;
    prev_frob = frob;
    if (stalls >= 2) break;
  }

  dec.induced = wrap_sym(n, d, x);
  dec.alpha = 0;
  for (double w : dec.weights) dec.alpha += w;
  MatrixXd diff = target.mat() - x;
  dec.schatten1 = schatten_norm(diff, 1);
  dec.frobenius = diff.norm();
  return dec;
}

QdfReport banded_qdf_check(const SymMatrix& m, int d, uint64_t seed, int max_atoms,
                           int lmo_restarts) {
  const int n = m.n(), r = m.d();
  if (d < 1 || d > r) throw std::invalid_argument("banded_qdf_check: need 1 <= d <= r");
  if (std::abs(m.trace() - 1.0) > 1e-10)
    throw std::invalid_argument("banded_qdf_check: input must have unit trace");
  if (eig_sym_values(m.mat()).minCoeff() < -1e-10)
    throw std::invalid_argument("banded_qdf_check: input must be psd");

  MaxSymMatrix a = maxsym_project(partial_trace(m, r - d));
  SeparableDecomposition dec = separable_approx(a, max_atoms, seed, lmo_restarts);

  QdfReport rep;
  rep.n = n;
  rep.d = d;
  rep.r = r;
  rep.distance1 = dec.schatten1;
  rep.distanceF = dec.frobenius;
  rep.bound = std::sqrt(static_cast<double>(dim_sym(n, d))) * 4.0 * d * (n - 1) / (r + 1);
  rep.alpha = dec.alpha;
  rep.trace_alpha_gap = std::abs(a.as_sym_matrix().trace() - dec.alpha);
  rep.atoms = static_cast<int>(dec.atoms.size());
  rep.iterations = dec.iterations;
  rep.pass = rep.distance1 <= rep.bound + 1e-9;
  return rep;
}

double alpha_d(int d) {
  if (d < 0) throw std::invalid_argument("alpha_d: negative d");
  return std::pow(2.0, d) / static_cast<double>(binom(2 * d, d));
}

double phi_d(double t, int d) {
  if (d < 1) throw std::invalid_argument("phi_d: d must be positive");
  if (t < 0 || t > 1) throw std::invalid_argument("phi_d: t outside [0,1]");
  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(2, 2);
  mix(0, 0) = t;
  mix(1, 1) = 1 - t;
  DenseTensorMatrix x = tensor_power_dense(mix, d);
  return maxsym_project_dense(x).as_sym_matrix().trace();
}

ReznickFamily reznick_vectors(int d) {
  if (d < 1) throw std::invalid_argument("reznick_vectors: d must be positive");
  ReznickFamily fam;
  fam.d = d;
  const int m = d + 2;
  Form sum(2, 2 * d);
  for (int k = 0; k < m; ++k) {
    double theta = k * M_PI / m;
    Eigen::Vector2d v(std::cos(theta), std::sin(theta));
    fam.vectors.push_back(v);
    // expand <v, x>^{2d} binomially and accumulate
    for (int j = 0; j <= 2 * d; ++j)
      sum.add_coeff(MultiIndex{j, 2 * d - j}, static_cast<double>(binom(2 * d, j)) *
                                                  std::pow(v[0], j) * std::pow(v[1], 2 * d - j));
  }
  Form lhs = s_power(2, d);
  // least-squares fit of the scaling constant, then a hard validation
  double num = 0, den = 0;
  for (const auto& [idx, c] : sum.terms()) {
    num += lhs.coeff(idx) * c;
    den += c * c;
  }
  if (den == 0) throw std::runtime_error("reznick_vectors: degenerate direction family");
  fam.coefficient = num / den;
  fam.residual = max_coeff_diff(lhs, fam.coefficient * sum);
  if (fam.residual > 1e-10)
    throw std::runtime_error("reznick_vectors: identity failed validation at d=" +
                             std::to_string(d));
  return fam;
}

namespace {

// Wishart-style doubly symmetric psd matrix with unit trace, in compressed
// coordinates (any psd matrix there is a valid doubly symmetric instance).
SymMatrix random_ds_trace_one(int n, int r, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  long long nn = dim_sym(n, r);
  // Low rank keeps the marginal away from the separable cone; full-rank
  // Wishart marginals land inside it up to numerical noise.
  long long rank = std::min<long long>(3, nn);
  MatrixXd v(nn, rank);
  for (long long i = 0; i < nn; ++i)
    for (long long j = 0; j < rank; ++j) v(i, j) = g(gen);
  MatrixXd m = v * v.transpose();
  m /= m.trace();
  return wrap_sym(n, r, m);
}

// Maximally symmetric psd trace-one instance: project a random doubly
// symmetric state, repair positivity by mixing toward the matrix of s^r
// (itself maximally symmetric and positive definite), renormalize.
SymMatrix random_maxsym_trace_one(int n, int r, std::mt19937_64& gen) {
  SymMatrix w = random_ds_trace_one(n, r, gen);
  MatrixXd a = maxsym_project(w).as_sym_matrix().mat();
  MatrixXd msr = maxsym_of_form(s_power(n, r)).as_sym_matrix().mat();
  double lmin = eig_sym_values(a).minCoeff();
  if (lmin < 1e-10) {
    double c = (1e-10 - lmin) / eig_sym_values(msr).minCoeff();
    a += c * msr;
  }
  a /= a.trace();
  return wrap_sym(n, r, a);
}

}  // namespace

DecayResult decay_experiment(DecayKind kind, int n, int d, const std::vector<int>& r_list,
                             int trials, uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("decay_experiment: trials must be positive");
  for (int r : r_list)
    if (r < d) throw std::invalid_argument("decay_experiment: every r must be >= d");

  DecayResult res;
  res.kind = kind;
  res.rows.resize(r_list.size() * static_cast<size_t>(trials));

  std::vector<std::function<void()>> tasks;
  for (size_t ri = 0; ri < r_list.size(); ++ri)
    for (int t = 0; t < trials; ++t) {
      size_t slot = ri * trials + static_cast<size_t>(t);
      int r = r_list[ri];
      tasks.push_back([&res, slot, kind, n, d, r, t, seed] {
        auto gen = make_rng(seed, slot);
        uint64_t inner_seed = gen();
        DecayRow row;
        row.n = n;
        row.d = d;
        row.r = r;
        row.trial = t;
        if (kind == DecayKind::Banded) {
          SymMatrix m = random_ds_trace_one(n, r, gen);
          QdfReport rep = banded_qdf_check(m, d, inner_seed);
          row.distance1 = rep.distance1;
          row.distanceF = rep.distanceF;
          row.bound = rep.bound;
          row.alpha = rep.alpha;
          row.atoms = rep.atoms;
          row.pass = rep.pass;
        } else {
          SymMatrix m = random_maxsym_trace_one(n, r, gen);
          MaxSymMatrix a = maxsym_project(partial_trace(m, r - d));
          SeparableDecomposition dec = separable_approx(a, 60, inner_seed);
          row.distance1 = dec.schatten1;
          row.distanceF = dec.frobenius;
          row.alpha = dec.alpha;
          row.atoms = static_cast<int>(dec.atoms.size());
        }
        res.rows[slot] = row;
      });
    }
  parallel_run(std::move(tasks), threads);

  res.mean_distance.assign(r_list.size(), 0.0);
  for (size_t ri = 0; ri < r_list.size(); ++ri) {
    for (int t = 0; t < trials; ++t)
      res.mean_distance[ri] += res.rows[ri * trials + static_cast<size_t>(t)].distance1;
    res.mean_distance[ri] /= trials;
  }
  auto [slope, floor] = fit_decay_slope(r_list, res.mean_distance);
  res.slope = slope;
  res.at_noise_floor = floor;
  return res;
}

std::pair<double, bool> fit_decay_slope(const std::vector<int>& r_list,
                                        const std::vector<double>& mean_distances) {
  if (r_list.size() != mean_distances.size())
    throw std::invalid_argument("fit_decay_slope: length mismatch");
  bool all_tiny = true;
  for (double v : mean_distances) all_tiny = all_tiny && v < 1e-9;
  if (all_tiny || r_list.size() < 2)
    return {std::numeric_limits<double>::quiet_NaN(), all_tiny};

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < r_list.size(); ++i) {
    if (mean_distances[i] <= 0) continue;
    double lx = std::log(static_cast<double>(r_list[i]));
    double ly = std::log(mean_distances[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt < 2) return {std::numeric_limits<double>::quiet_NaN(), false};
  double denom = cnt * sxx - sx * sx;
  if (denom == 0) return {std::numeric_limits<double>::quiet_NaN(), false};
  return {(cnt * sxy - sx * sy) / denom, false};
}

}  // namespace sphier
