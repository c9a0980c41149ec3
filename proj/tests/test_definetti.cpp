#include "sphier/definetti.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "sphier/linalg.hpp"
#include "sphier/rng.hpp"

using namespace sphier;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd random_unit(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = g(gen);
  return v / v.norm();
}

}  // namespace

TEST_CASE("rho_r is a real doubly symmetric state with frozen marginal") {
  DenseTensorMatrix rho2 = rho_r(2);
  CHECK(rho2.max_imag() <= 1e-14);
  CHECK(std::abs(rho2.mat().real().trace() - 1.0) <= 1e-14);
  CHECK(eig_herm_values(rho2.mat()).minCoeff() >= -1e-14);
  // entries fixed by the complex outer products
  auto i11 = rho2.index_of({0, 0}), i22 = rho2.index_of({1, 1});
  auto i12 = rho2.index_of({0, 1}), i21 = rho2.index_of({1, 0});
  CHECK(rho2.mat()(i11, i22).real() == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(rho2.mat()(i12, i21).real() == doctest::Approx(0.25).epsilon(1e-14));
  // doubly symmetric: commutes with the symmetrizer
  MatrixXd pi = oracle::sym_projector(2, 2);
  CHECK((pi * rho2.mat().real() * pi - rho2.mat().real()).cwiseAbs().maxCoeff() <= 1e-14);

  for (int r = 3; r <= 5; ++r) {
    DenseTensorMatrix rho = rho_r(r);
    CHECK(std::abs(rho.mat().real().trace() - 1.0) <= 1e-13);
    DenseTensorMatrix marg = rho.partial_trace_last(r - 2);
    CHECK((marg.mat() - rho2.mat()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK_THROWS_AS(rho_r(13), std::length_error);
}

TEST_CASE("distance to the maximally symmetric subspace") {
  // a maximally symmetric matrix projects to itself
  auto gen = make_rng(51, 0);
  std::normal_distribution<double> g;
  MaxSymMatrix y(2, 2);
  for (int i = 0; i < y.moments().size(); ++i) y.moments()[i] = g(gen);
  CHECK(maxsym_distance(dense_of_maxsym(y)).schatten1 <= 1e-10);
  CHECK(maxsym_distance(y.as_sym_matrix()).schatten1 <= 1e-12);

  // real rank-one powers are maximally symmetric
  VectorXd u = random_unit(3, gen);
  CHECK(maxsym_distance(rank_one_power(u, 2)).schatten1 <= 1e-12);

  // rho_2 is not, and the gap never shrinks with r
  double base = maxsym_distance(rho_r(2)).schatten1;
  CHECK(base > 0.1);
  for (int r = 3; r <= 5; ++r) {
    DenseTensorMatrix marg = rho_r(r).partial_trace_last(r - 2);
    CHECK(maxsym_distance(marg).schatten1 == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("linear maximization oracle over separable atoms") {
  auto gen = make_rng(53, 1);
  VectorXd v = random_unit(3, gen);
  auto lmo = separable_lmo(rank_one_power(v, 2), 16, 7);
  CHECK(lmo.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(lmo.u.dot(v)) == doctest::Approx(1.0).epsilon(1e-9));

  // the matrix of s^d represents the constant 1 on the sphere
  SymMatrix msd = maxsym_of_form(s_power(3, 2)).as_sym_matrix();
  CHECK(separable_lmo(msd, 4, 7).value == doctest::Approx(1.0).epsilon(1e-10));

  // d = 1 reduces to the top eigenvector
  MatrixXd a(3, 3);
  a << 4, 1, 0, 1, 3, -1, 0, -1, 2;
  SymMatrix ga(3, 1);
  ga.mat() = a;
  auto top = separable_lmo(ga, 16, 7);
  EigSym es = eig_sym(a);
  CHECK(top.value == doctest::Approx(es.values.maxCoeff()).epsilon(1e-9));
  CHECK(std::abs(top.u.dot(es.vectors.col(2))) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("Frank-Wolfe recovers short separable mixtures") {
  for (int n : {2, 3}) {
    auto gen = make_rng(59, static_cast<unsigned long>(n));
    std::uniform_real_distribution<double> wdist(0.2, 1.0);
    SymMatrix target(n, 2);
    double wsum = 0;
    for (int k = 0; k < 3; ++k) {
      double w = wdist(gen);
      wsum += w;
      target.mat() += w * rank_one_power(random_unit(n, gen), 2).mat();
    }
    MaxSymMatrix a = maxsym_project(target);  // already maximally symmetric
    auto dec = separable_approx(a, 40, 11);
    CHECK(dec.schatten1 <= 1e-7);
    CHECK(dec.frobenius <= 1e-7);
    CHECK(dec.alpha == doctest::Approx(wsum).epsilon(1e-6));
    for (const auto& atom : dec.atoms) CHECK(std::abs(atom.norm() - 1.0) <= 1e-12);
    for (double w : dec.weights) CHECK(w > 0);
    // the induced matrix stays in the maximally symmetric cone
    CHECK(maxsym_distance(dec.induced).schatten1 <= 1e-8);
  }
}

TEST_CASE("uniform-measure moment matrix is separable") {
  SymMatrix msd = maxsym_of_form(s_power(2, 2)).as_sym_matrix();
  MatrixXd normalized = msd.mat() / msd.trace();
  SymMatrix a(2, 2);
  a.mat() = normalized;
  auto dec = separable_approx(maxsym_project(a), 40, 3);
  CHECK(dec.schatten1 <= 1e-7);
  CHECK(dec.alpha == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("alpha_d, phi_d, and the plane quadrature identity") {
  CHECK(alpha_d(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(alpha_d(2) == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(alpha_d(3) == doctest::Approx(2.0 / 5).epsilon(1e-15));
  for (int d = 1; d <= 4; ++d) {
    CHECK(std::abs(phi_d(0.5, d) - alpha_d(d)) <= 1e-10);
    CHECK(std::abs(phi_d(0.0, d) - 1.0) <= 1e-10);
    CHECK(std::abs(phi_d(1.0, d) - 1.0) <= 1e-10);
    for (double t : {0.1, 0.3, 0.45})
      CHECK(std::abs(phi_d(t, d) - phi_d(1 - t, d)) <= 1e-12);
  }
  // phi_d is an even polynomial in (t - 1/2) with nonnegative coefficients:
  // fit on a grid and inspect
  for (int d = 2; d <= 3; ++d) {
    const int pts = 41;
    MatrixXd vand(pts, d + 1);
    VectorXd vals(pts);
    for (int i = 0; i < pts; ++i) {
      double t = static_cast<double>(i) / (pts - 1);
      double u2 = (t - 0.5) * (t - 0.5);
      for (int k = 0; k <= d; ++k) vand(i, k) = std::pow(u2, k);
      vals[i] = phi_d(t, d);
    }
    VectorXd coef = vand.colPivHouseholderQr().solve(vals);
    for (int k = 0; k <= d; ++k) CHECK(coef[k] >= -1e-9);
    CHECK((vand * coef - vals).cwiseAbs().maxCoeff() <= 1e-9);
  }

  for (int d = 1; d <= 6; ++d) {
    auto fam = reznick_vectors(d);
    CHECK(fam.residual <= 1e-10);
    CHECK(static_cast<int>(fam.vectors.size()) == d + 2);
    for (const auto& v : fam.vectors) CHECK(std::abs(v.norm() - 1.0) <= 1e-14);
  }
  CHECK(reznick_vectors(1).coefficient == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("banded bound check on exactly separable inputs") {
  auto gen = make_rng(61, 2);
  VectorXd u = random_unit(2, gen);
  SymMatrix m = rank_one_power(u, 6);
  auto rep = banded_qdf_check(m, 2, 5);
  CHECK(rep.pass);
  CHECK(rep.distance1 <= 1e-7);
  CHECK(rep.alpha == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.trace_alpha_gap <= 1e-6);
  CHECK(rep.bound == doctest::Approx(std::sqrt(3.0) * 8.0 / 7.0).epsilon(1e-12));

  // short mixture, unit trace
  SymMatrix mix(2, 6);
  mix.mat() = 0.5 * rank_one_power(random_unit(2, gen), 6).mat() +
              0.5 * rank_one_power(random_unit(2, gen), 6).mat();
  auto rep2 = banded_qdf_check(mix, 2, 5);
  CHECK(rep2.distance1 <= 1e-7);
  CHECK(rep2.trace_alpha_gap <= 1e-6);

  SymMatrix bad = rank_one_power(u, 6);
  bad.mat() *= 2.0;
  CHECK_THROWS_AS(banded_qdf_check(bad, 2), std::invalid_argument);
}

TEST_CASE("random doubly symmetric instance passes the banded bound") {
  auto gen = make_rng(67, 0);
  std::normal_distribution<double> g;
  int nn = static_cast<int>(dim_sym(2, 8));
  MatrixXd v(nn, nn);
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) v(i, j) = g(gen);
  SymMatrix m(2, 8);
  m.mat() = v * v.transpose();
  m.mat() /= m.trace();
  auto rep = banded_qdf_check(m, 2, 9);
  CHECK(rep.pass);
  CHECK(rep.distance1 > 0);
  CHECK(rep.atoms >= 1);
}

TEST_CASE("decay experiment tables and slope fit") {
  auto banded = decay_experiment(DecayKind::Banded, 2, 2, {4, 6}, 2, 0);
  REQUIRE(banded.rows.size() == 4);
  for (const auto& row : banded.rows) {
    CHECK(row.bound > 0);
    CHECK(row.distance1 >= 0);
    CHECK(std::isfinite(row.distanceF));
  }
  bool all_tiny = true;
  for (double m : banded.mean_distance) all_tiny = all_tiny && m < 1e-9;
  CHECK(banded.at_noise_floor == all_tiny);

  auto maxsym = decay_experiment(DecayKind::MaxSym, 2, 2, {4, 8}, 2, 0);
  REQUIRE(maxsym.rows.size() == 4);
  for (const auto& row : maxsym.rows) CHECK(std::isnan(row.bound));
  CHECK(maxsym.mean_distance[1] <= maxsym.mean_distance[0] + 0.05);

  // slope fit on synthetic exact power law, and the noise-floor branch
  auto [slope, floor1] = fit_decay_slope({2, 4, 8}, {0.25, 0.0625, 0.015625});
  CHECK(!floor1);
  CHECK(slope == doctest::Approx(-2.0).epsilon(1e-12));
  auto [s2, floor2] = fit_decay_slope({2, 4}, {1e-12, 3e-13});
  CHECK(floor2);
  CHECK(std::isnan(s2));

  CHECK_THROWS_AS(decay_experiment(DecayKind::MaxSym, 2, 3, {2}, 1, 0), std::invalid_argument);
}
