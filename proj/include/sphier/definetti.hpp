#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <vector>

#include "sphier/dense_tensor.hpp"
#include "sphier/form.hpp"
#include "sphier/symmat.hpp"

namespace sphier {

// rho_r = (uu*)^{xr}/2 + (conj u conj u*)^{xr}/2 with u = (1, i)/sqrt(2):
// a real, doubly symmetric, psd, trace-one matrix on (R^2)^{xr} whose
// two-register marginal never gets closer to the separable cone as r grows.
DenseTensorMatrix rho_r(int r);

struct MaxsymDistance {
  double schatten1 = 0;
  double frobenius = 0;
};
// Distance to the maximally symmetric subspace (Frobenius projection);
// the Schatten-1 value lower-bounds the distance to any maximally
// symmetric set in every norm dominated by Schatten-1.
MaxsymDistance maxsym_distance(const DenseTensorMatrix& m);
MaxsymDistance maxsym_distance(const SymMatrix& m);

struct LmoResult {
  Eigen::VectorXd u;
  double value = 0;  // <G, (uu^T)^{xd}> at the best u found
};
// Heuristic linear maximization over separable atoms: the best unit u for
// <G, (uu^T)^{xd}>, found by multi-start ascent on form_of_gram(G).
LmoResult separable_lmo(const SymMatrix& g, int restarts = 16, uint64_t seed = 0,
                        const std::vector<Eigen::VectorXd>& warm_starts = {});

struct SeparableDecomposition {
  std::vector<double> weights;           // all > 0
  std::vector<Eigen::VectorXd> atoms;    // unit vectors
  SymMatrix induced;                     // sum_i w_i (u_i u_i^T)^{xd}
  double alpha = 0;                      // sum of weights
  double schatten1 = 0, frobenius = 0;   // residual against the target
  int iterations = 0;
};

// Fully corrective Frank-Wolfe over the cone of powered rank-one atoms:
// greedily add the LMO atom for the residual, refit all weights by
// nonnegative least squares, drop atoms at zero weight.  Heuristic: always
// returns the best decomposition found.
SeparableDecomposition separable_approx(const MaxSymMatrix& a, int max_atoms = 60,
                                        uint64_t seed = 0, int lmo_restarts = 16);

struct QdfReport {
  int n = 0, d = 0, r = 0;
  double distance1 = 0, distanceF = 0;
  double bound = 0;           // sqrt(N_{n,d}) * 4d(n-1)/(r+1)
  double alpha = 0;
  double trace_alpha_gap = 0; // |trace(A) - alpha|
  int atoms = 0;
  int iterations = 0;
  bool pass = false;          // distance1 <= bound + 1e-9
};

// For a doubly symmetric psd trace-one M on S^r: project the d-register
// marginal onto the maximally symmetric subspace and measure how far it is
// from the separable cone, against the banded bound.
QdfReport banded_qdf_check(const SymMatrix& m, int d, uint64_t seed = 0, int max_atoms = 60,
                           int lmo_restarts = 16);

// 2^d / binom(2d, d): the lower end of the admissible alpha range.
double alpha_d(int d);

// Tr of the maximally symmetric projection of (t v v^T + (1-t) w w^T)^{xd}
// with v, w orthonormal in the plane; equals alpha_d at t = 1/2 and 1 at the
// endpoints.
double phi_d(double t, int d);

struct ReznickFamily {
  int d = 0;
  double coefficient = 0;  // c in s^d == c * sum_k <v_k, .>^{2d}, fitted then verified
  double residual = 0;     // coefficient-wise residual of the verified identity
  std::vector<Eigen::Vector2d> vectors;  // d+2 equally spaced plane directions
};
// Throws std::runtime_error if the identity cannot be validated to 1e-10.
ReznickFamily reznick_vectors(int d);

enum class DecayKind { MaxSym, Banded };

struct DecayRow {
  int n = 0, d = 0, r = 0, trial = 0;
  double distance1 = 0, distanceF = 0;
  double bound = std::numeric_limits<double>::quiet_NaN();  // banded rows only
  double alpha = 0;
  int atoms = 0;
  bool pass = true;  // banded rows only
};

struct DecayResult {
  DecayKind kind = DecayKind::MaxSym;
  std::vector<DecayRow> rows;
  std::vector<double> mean_distance;  // per entry of r_list, Schatten-1
  double slope = std::numeric_limits<double>::quiet_NaN();
  bool at_noise_floor = false;
};

// Random trace-one psd inputs of the required symmetry class (maximally
// symmetric resp. doubly symmetric) per r and trial; measures the separable
// approximation distance of the d-register marginal and fits the log-log
// decay slope.
DecayResult decay_experiment(DecayKind kind, int n, int d, const std::vector<int>& r_list,
                             int trials, uint64_t seed = 0, int threads = 0);

// Least-squares slope of log(mean distance) against log(r); reports the
// noise floor (all means below 1e-9) instead of a slope when applicable.
std::pair<double, bool> fit_decay_slope(const std::vector<int>& r_list,
                                        const std::vector<double>& mean_distances);

}  // namespace sphier
