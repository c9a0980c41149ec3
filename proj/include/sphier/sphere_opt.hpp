#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sphier/form.hpp"

namespace sphier {

struct SphereExtrema {
  double min_value = 0;
  double max_value = 0;
  Eigen::VectorXd argmin;
  Eigen::VectorXd argmax;
};

// Heuristic global minimum of f on the unit sphere: seeded multi-start
// projected gradient with Armijo backtracking (gradient tolerance 1e-9,
// iteration cap 10000 per start).  For n = 2 a 10^4-point angular grid seeds
// an extra start.  `warm_starts` adds deterministic starting points on top of
// the seeded random ones.  Returns an upper bound on the true minimum.
std::pair<double, Eigen::VectorXd> sphere_minimize(
    const Form& f, int restarts = 24, uint64_t seed = 0,
    const std::vector<Eigen::VectorXd>& warm_starts = {});
std::pair<double, Eigen::VectorXd> sphere_maximize(
    const Form& f, int restarts = 24, uint64_t seed = 0,
    const std::vector<Eigen::VectorXd>& warm_starts = {});
SphereExtrema sphere_extrema_estimate(const Form& f, int restarts = 24, uint64_t seed = 0);

}  // namespace sphier
