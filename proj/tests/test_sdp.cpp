#include "sphier/sdp.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "sphier/linalg.hpp"
#include "sphier/rng.hpp"

using namespace sphier;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_sym(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(gen);
  return 0.5 * (a + a.transpose());
}

}  // namespace

TEST_CASE("interval problem solves to the boundary") {
  // max y s.t. diag(1-y, 1+y) psd  ->  y* = 1.
  SdpProblem p;
  p.F0 = MatrixXd::Identity(2, 2);
  MatrixXd f1(2, 2);
  f1 << -1, 0, 0, 1;
  p.Fs = {f1};
  p.b = VectorXd::Ones(1);
  auto sol = solve_sdp(p);
  REQUIRE(sol.status == SdpStatus::Optimal);
  CHECK(sol.y[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(sol.dual_objective == doctest::Approx(1.0).epsilon(1e-6));
  // Dual certificate: Z psd with <F1, Z> = -1, so all mass on the (1,1) slot.
  CHECK(eig_sym_values(sol.Z).minCoeff() >= -1e-9);
  CHECK(sol.Z(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("max lambda with A - lambda I psd recovers the smallest eigenvalue") {
  for (unsigned long trial = 0; trial < 5; ++trial) {
    auto gen = make_rng(7, trial);
    MatrixXd a = random_sym(8, gen);
    SdpProblem p;
    p.F0 = a;
    p.Fs = {-MatrixXd::Identity(8, 8)};
    p.b = VectorXd::Ones(1);
    auto sol = solve_sdp(p);
    REQUIRE(sol.status == SdpStatus::Optimal);
    double lmin = eig_sym_values(a).minCoeff();
    CHECK(sol.y[0] == doctest::Approx(lmin).epsilon(1e-7));
    // Dual optimum is a density matrix supported on the bottom eigenspace.
    CHECK(sol.Z.trace() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(eig_sym_values(sol.Z).minCoeff() >= -1e-8);
    CHECK(sol.dual_objective == doctest::Approx(lmin).epsilon(1e-6));
  }
}

TEST_CASE("random bounded problems reach KKT accuracy") {
  for (unsigned long trial = 0; trial < 6; ++trial) {
    auto gen = make_rng(11, trial);
    const int n = 6, m = 8;
    SdpProblem p;
    p.F0 = MatrixXd::Identity(n, n) + 0.2 * random_sym(n, gen);
    for (int i = 0; i < m; ++i) p.Fs.push_back(random_sym(n, gen));
    // b from a strictly feasible dual point keeps the primal bounded.
    MatrixXd w = random_sym(n, gen);
    MatrixXd z0 = w * w.transpose() + 0.1 * MatrixXd::Identity(n, n);
    p.b = VectorXd(m);
    for (int i = 0; i < m; ++i) p.b[i] = -p.Fs[i].cwiseProduct(z0).sum();
    auto sol = solve_sdp(p);
    REQUIRE(sol.status == SdpStatus::Optimal);
    CHECK(sol.primal_infeas <= 1e-8);
    CHECK(sol.dual_infeas <= 1e-8);
    double scale = 1 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective);
    CHECK(sol.gap <= 1e-7 * scale);
    // Weak duality sandwich, and the slack really is F(y).
    CHECK(sol.dual_objective >= sol.primal_objective - 1e-6 * scale);
    MatrixXd fy = p.F0;
    for (int i = 0; i < m; ++i) fy += sol.y[i] * p.Fs[i];
    CHECK(eig_sym_values(fy).minCoeff() >= -1e-7);
    CHECK(eig_sym_values(sol.Z).minCoeff() >= -1e-8);
  }
}

TEST_CASE("objective scaling does not move the argmax") {
  auto gen = make_rng(13, 0);
  const int n = 5, m = 4;
  SdpProblem p;
  p.F0 = MatrixXd::Identity(n, n);
  for (int i = 0; i < m; ++i) p.Fs.push_back(random_sym(n, gen));
  MatrixXd w = random_sym(n, gen);
  MatrixXd z0 = w * w.transpose() + 0.5 * MatrixXd::Identity(n, n);
  p.b = VectorXd(m);
  for (int i = 0; i < m; ++i) p.b[i] = -p.Fs[i].cwiseProduct(z0).sum();
  auto sol1 = solve_sdp(p);
  SdpProblem q = p;
  q.b *= 10.0;
  auto sol2 = solve_sdp(q);
  REQUIRE(sol1.status == SdpStatus::Optimal);
  REQUIRE(sol2.status == SdpStatus::Optimal);
  CHECK((sol1.y - sol2.y).lpNorm<Eigen::Infinity>() <= 2e-4 * (1 + sol1.y.norm()));
  CHECK(sol2.primal_objective == doctest::Approx(10 * sol1.primal_objective).epsilon(1e-6));
}

TEST_CASE("primal infeasible problem is flagged") {
  // F(y) = [[y, 1], [1, -y]] has determinant -(1 + y^2) < 0 for all y.
  SdpProblem p;
  p.F0.resize(2, 2);
  p.F0 << 0, 1, 1, 0;
  MatrixXd f1(2, 2);
  f1 << 1, 0, 0, -1;
  p.Fs = {f1};
  p.b = VectorXd::Ones(1);
  auto sol = solve_sdp(p);
  CHECK(sol.status == SdpStatus::Infeasible);
}

TEST_CASE("iteration cap reports MaxIter") {
  auto gen = make_rng(17, 0);
  SdpProblem p;
  p.F0 = MatrixXd::Identity(4, 4);
  p.Fs = {random_sym(4, gen), random_sym(4, gen)};
  MatrixXd w = random_sym(4, gen);
  MatrixXd z0 = w * w.transpose() + 0.5 * MatrixXd::Identity(4, 4);
  p.b = VectorXd(2);
  for (int i = 0; i < 2; ++i) p.b[i] = -p.Fs[i].cwiseProduct(z0).sum();
  SdpOptions opt;
  opt.max_iter = 2;
  auto sol = solve_sdp(p, opt);
  CHECK(sol.status == SdpStatus::MaxIter);
  CHECK(sol.iterations == 2);
}

TEST_CASE("degenerate inputs are rejected or resolved") {
  SdpProblem p;
  p.F0 = MatrixXd::Identity(3, 3);
  p.b = VectorXd::Zero(0);
  CHECK(solve_sdp(p).status == SdpStatus::Optimal);
  p.F0 = -MatrixXd::Identity(3, 3);
  CHECK(solve_sdp(p).status == SdpStatus::Infeasible);
  p.b = VectorXd::Zero(2);
  CHECK_THROWS_AS(solve_sdp(p), std::invalid_argument);
}
