#include "sphier/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "sphier/linalg.hpp"

namespace sphier {

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::MaxIter: return "max_iterations";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Triplet {
  int r, c;
  double v;
};

// U^T diag(lam^p) U with eigenvalues clamped away from zero; callers only
// take fractional powers of matrices that are positive definite up to
// roundoff.
MatrixXd sym_power(const Eigen::SelfAdjointEigenSolver<MatrixXd>& es, double p) {
  VectorXd lam = es.eigenvalues();
  for (int i = 0; i < lam.size(); ++i) lam[i] = std::pow(std::max(lam[i], 1e-300), p);
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

double inner(const std::vector<Triplet>& a, const MatrixXd& dense) {
  double s = 0;
  for (const auto& t : a) s += t.v * dense(t.r, t.c);
  return s;
}

// Largest alpha with X + alpha*dX psd, via lambda_min of the shaped step.
double max_step(const Eigen::SelfAdjointEigenSolver<MatrixXd>& es_x, const MatrixXd& dx) {
  MatrixXd half = sym_power(es_x, -0.5);
  MatrixXd shaped = half * dx * half;
  double lmin = eig_sym_values(0.5 * (shaped + shaped.transpose())).minCoeff();
  if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt) {
  const int N = static_cast<int>(p.F0.rows());
  const int m = static_cast<int>(p.Fs.size());
  if (p.F0.cols() != N) throw std::invalid_argument("solve_sdp: F0 not square");
  if (p.b.size() != m) throw std::invalid_argument("solve_sdp: b size mismatch");
  for (const auto& f : p.Fs)
    if (f.rows() != N || f.cols() != N) throw std::invalid_argument("solve_sdp: F_i size mismatch");

  SdpSolution sol;
  if (m == 0) {
    sol.y = VectorXd::Zero(0);
    sol.S = p.F0;
    sol.Z = MatrixXd::Zero(N, N);
    sol.status = eig_sym_values(p.F0).minCoeff() >= -opt.feas_tol ? SdpStatus::Optimal
                                                                  : SdpStatus::Infeasible;
    return sol;
  }

  std::vector<std::vector<Triplet>> sparse(m);
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        if (p.Fs[i](r, c) != 0.0) sparse[i].push_back({r, c, p.Fs[i](r, c)});

  const double f0_scale = 1.0 + p.F0.norm();
  const double b_scale = 1.0 + p.b.lpNorm<Eigen::Infinity>();

  VectorXd y = VectorXd::Zero(m);
  double rho = 2.0 * std::max(0.0, -eig_sym_values(p.F0).minCoeff()) + 1.0;
  MatrixXd S = p.F0 + rho * MatrixXd::Identity(N, N);
  MatrixXd Z = MatrixXd::Identity(N, N);

  auto assemble = [&](const VectorXd& yy) {
    MatrixXd f = p.F0;
    for (int i = 0; i < m; ++i) f += yy[i] * p.Fs[i];
    return f;
  };

  double best_pinf = std::numeric_limits<double>::infinity();
  int stalled = 0;

  for (int it = 1; it <= opt.max_iter; ++it) {
    sol.iterations = it;

    MatrixXd Rp = assemble(y) - S;
    VectorXd rd(m);
    for (int i = 0; i < m; ++i) rd[i] = -p.b[i] - inner(sparse[i], Z);

    double mu = S.cwiseProduct(Z).sum() / N;
    sol.primal_objective = p.b.dot(y);
    sol.dual_objective = p.F0.cwiseProduct(Z).sum();
    sol.gap = S.cwiseProduct(Z).sum();
    sol.primal_infeas = Rp.norm() / f0_scale;
    sol.dual_infeas = rd.lpNorm<Eigen::Infinity>() / b_scale;
    if (opt.verbose)
      std::fprintf(stderr, "iter %3d  mu %.3e  pinf %.3e  dinf %.3e  obj %.10e\n", it, mu,
                   sol.primal_infeas, sol.dual_infeas, sol.primal_objective);

    double obj_scale = 1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective);
    if (sol.primal_infeas <= opt.feas_tol && sol.dual_infeas <= opt.feas_tol &&
        sol.gap <= opt.gap_tol * obj_scale) {
      sol.y = y;
      sol.S = S;
      sol.Z = Z;
      sol.status = SdpStatus::Optimal;
      return sol;
    }

    // Divergence heuristics: the central path cannot reach feasibility, or
    // the dual objective is exploding while complementarity shrinks.
    if (sol.primal_infeas < best_pinf - 1e-16)
      best_pinf = sol.primal_infeas, stalled = 0;
    else
      ++stalled;
    bool feas_hopeless = mu < 1e-12 && sol.primal_infeas > 1e3 * opt.feas_tol;
    bool exploding = y.lpNorm<Eigen::Infinity>() > 1e12 ||
                     std::abs(sol.dual_objective) > 1e13 * b_scale;
    if ((feas_hopeless && stalled > 5) || exploding) {
      sol.y = y;
      sol.S = S;
      sol.Z = Z;
      sol.status = SdpStatus::Infeasible;
      return sol;
    }

    // Nesterov-Todd scaling point W: W Z W = S.  T = W^{-1/2}, D = W^{1/2}.
    Eigen::SelfAdjointEigenSolver<MatrixXd> es_s(S);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es_z(Z);
    if (es_s.eigenvalues().minCoeff() <= 0 || es_z.eigenvalues().minCoeff() <= 0) {
      sol.y = y;
      sol.S = S;
      sol.Z = Z;
      sol.status = SdpStatus::NumericalFailure;
      return sol;
    }
    MatrixXd s_half = sym_power(es_s, 0.5);
    MatrixXd s_mhalf = sym_power(es_s, -0.5);
    MatrixXd G = s_half * Z * s_half;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es_g(0.5 * (G + G.transpose()));
    MatrixXd Winv = s_mhalf * sym_power(es_g, 0.5) * s_mhalf;
    Winv = 0.5 * (Winv + Winv.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es_winv(Winv);
    MatrixXd T = sym_power(es_winv, 0.5);
    MatrixXd V = T * S * T;
    V = 0.5 * (V + V.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es_v(V);
    const MatrixXd& P = es_v.eigenvectors();
    const VectorXd& lam_v = es_v.eigenvalues();

    // Apply L_V^{-1} in the eigenbasis of V: divide by (lam_i + lam_j)/2.
    auto lyapunov_solve = [&](const MatrixXd& rc) {
      MatrixXd c = P.transpose() * rc * P;
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) c(i, j) *= 2.0 / (lam_v[i] + lam_v[j]);
      return MatrixXd(P * c * P.transpose());
    };

    // Schur matrix A_ij = <F_i, Winv F_j Winv> from rank-one pieces of F_j.
    MatrixXd A = MatrixXd::Zero(m, m);
    MatrixXd U(N, N);
    for (int j = 0; j < m; ++j) {
      U.setZero();
      for (const auto& t : sparse[j]) U += t.v * (Winv.col(t.r) * Winv.row(t.c));
      for (int i = 0; i <= j; ++i) A(i, j) = A(j, i) = inner(sparse[i], U);
    }
    MatrixXd L;
    try {
      L = cholesky(A);
    } catch (const NotPositiveDefinite&) {
      double ridge = 1e-12 * (1.0 + A.trace() / m);
      try {
        L = cholesky(A + ridge * MatrixXd::Identity(m, m));
      } catch (const NotPositiveDefinite&) {
        sol.y = y;
        sol.S = S;
        sol.Z = Z;
        sol.status = SdpStatus::NumericalFailure;
        return sol;
      }
    }
    auto schur_solve = [&](const VectorXd& rhs) {
      VectorXd t = L.triangularView<Eigen::Lower>().solve(rhs);
      return VectorXd(L.transpose().triangularView<Eigen::Upper>().solve(t));
    };

    MatrixXd winv_rp_winv = Winv * Rp * Winv;
    // One Newton direction for a given scaled residual Rtilde = dS^ + dZ^.
    auto direction = [&](const MatrixXd& rtilde, MatrixXd& ds, MatrixXd& dz, VectorXd& dy) {
      MatrixXd trt = T * rtilde * T;
      VectorXd rhs(m);
      for (int i = 0; i < m; ++i)
        rhs[i] = inner(sparse[i], trt) - inner(sparse[i], winv_rp_winv) - rd[i];
      dy = schur_solve(rhs);
      ds = Rp;
      for (int i = 0; i < m; ++i) ds += dy[i] * p.Fs[i];
      ds = 0.5 * (ds + ds.transpose());
      dz = trt - Winv * ds * Winv;
      dz = 0.5 * (dz + dz.transpose());
    };

    // Predictor: aim at mu = 0; L_V^{-1}(-V^2) = -V.
    MatrixXd dsa, dza;
    VectorXd dya;
    direction(-V, dsa, dza, dya);
    double ap = std::min(1.0, opt.step_fraction * max_step(es_s, dsa));
    double ad = std::min(1.0, opt.step_fraction * max_step(es_z, dza));
    double mu_aff = (S + ap * dsa).cwiseProduct(Z + ad * dza).sum() / N;
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3);
    sigma = std::min(1.0, std::max(sigma, 0.0));

    // Corrector with Mehrotra second-order term in the scaled space.
    MatrixXd D = sym_power(es_winv, -0.5);
    MatrixXd dsa_hat = T * dsa * T;
    MatrixXd dza_hat = D * dza * D;
    MatrixXd cross = dsa_hat * dza_hat;
    MatrixXd rc = sigma * mu * MatrixXd::Identity(N, N) - V * V - 0.5 * (cross + cross.transpose());
    MatrixXd ds, dz;
    VectorXd dy;
    direction(lyapunov_solve(rc), ds, dz, dy);

    double alpha_p = std::min(1.0, opt.step_fraction * max_step(es_s, ds));
    double alpha_d = std::min(1.0, opt.step_fraction * max_step(es_z, dz));
    y += alpha_p * dy;
    S += alpha_p * ds;
    Z += alpha_d * dz;
    S = 0.5 * (S + S.transpose());
    Z = 0.5 * (Z + Z.transpose());
    if (!S.allFinite() || !Z.allFinite() || !y.allFinite()) {
      sol.status = SdpStatus::NumericalFailure;
      return sol;
    }
  }

  sol.y = y;
  sol.S = S;
  sol.Z = Z;
  sol.status = SdpStatus::MaxIter;
  return sol;
}

}  // namespace sphier
