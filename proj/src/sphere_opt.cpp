#include "sphier/sphere_opt.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "sphier/rng.hpp"

namespace sphier {

namespace {
constexpr double kGradTol = 1e-9;
constexpr int kMaxIter = 10000;

struct Objective {
  const Form& f;
  std::vector<Form> grad;
  explicit Objective(const Form& form) : f(form) {
    grad.reserve(static_cast<size_t>(f.n()));
    for (int i = 0; i < f.n(); ++i) grad.push_back(f.partial(i));
  }
  double value(const Eigen::VectorXd& x) const {
    std::vector<double> p(x.data(), x.data() + x.size());
    return f.evaluate(p);
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    std::vector<double> p(x.data(), x.data() + x.size());
    Eigen::VectorXd g(x.size());
    for (int i = 0; i < f.n(); ++i) g(i) = grad[static_cast<size_t>(i)].evaluate(p);
    return g;
  }
};

// Projected gradient descent from x0; returns (value, point).
std::pair<double, Eigen::VectorXd> descend(const Objective& obj, Eigen::VectorXd x) {
  x.normalize();
  double fx = obj.value(x);
  for (int it = 0; it < kMaxIter; ++it) {
    Eigen::VectorXd g = obj.gradient(x);
    Eigen::VectorXd rg = g - g.dot(x) * x;  // Riemannian gradient
    double rn = rg.norm();
    if (rn < kGradTol) break;
    double t = 1.0 / (1.0 + rn);
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Eigen::VectorXd y = (x - t * rg).normalized();
      double fy = obj.value(y);
      if (fy <= fx - 1e-4 * t * rn * rn) {
        x = y;
        fx = fy;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return {fx, x};
}
}  // namespace

std::pair<double, Eigen::VectorXd> sphere_minimize(const Form& f, int restarts, uint64_t seed,
                                                   const std::vector<Eigen::VectorXd>& warm_starts) {
  if (f.degree() == 0) {
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(f.n());
    e1(0) = 1.0;
    return {f.coeff(MultiIndex(std::vector<int>(static_cast<size_t>(f.n()), 0))), e1};
  }
  Objective obj(f);
  int n = f.n();
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd bestx = Eigen::VectorXd::Zero(n);
  bestx(0) = 1.0;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int r = 0; r < restarts; ++r) {
    auto rng = make_rng(seed, static_cast<uint64_t>(r));
    Eigen::VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0(i) = normal(rng);
    if (x0.norm() < 1e-12) x0(0) = 1.0;
    auto [v, x] = descend(obj, x0);
    if (v < best) {
      best = v;
      bestx = x;
    }
  }
  for (const Eigen::VectorXd& w : warm_starts) {
    if (w.size() != n || w.norm() < 1e-12) continue;
    auto [v, x] = descend(obj, w);
    if (v < best) {
      best = v;
      bestx = x;
    }
  }
  if (n == 2) {
    // angular grid seed: cheap and exhaustive enough in 2 variables
    Eigen::VectorXd g0(2);
    double gbest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 10000; ++k) {
      double th = 2.0 * M_PI * k / 10000.0;
      Eigen::VectorXd x(2);
      x << std::cos(th), std::sin(th);
      double v = obj.value(x);
      if (v < gbest) {
        gbest = v;
        g0 = x;
      }
    }
    auto [v, x] = descend(obj, g0);
    if (v < best) {
      best = v;
      bestx = x;
    }
  }
  return {best, bestx};
}

std::pair<double, Eigen::VectorXd> sphere_maximize(const Form& f, int restarts, uint64_t seed,
                                                   const std::vector<Eigen::VectorXd>& warm_starts) {
  Form neg = f;
  neg *= -1.0;
  auto [v, x] = sphere_minimize(neg, restarts, seed, warm_starts);
  return {-v, x};
}

SphereExtrema sphere_extrema_estimate(const Form& f, int restarts, uint64_t seed) {
  SphereExtrema ex;
  auto [mn, xmin] = sphere_minimize(f, restarts, seed);
  auto [mx, xmax] = sphere_maximize(f, restarts, seed + 1);
  ex.min_value = mn;
  ex.max_value = mx;
  ex.argmin = xmin;
  ex.argmax = xmax;
  return ex;
}

}  // namespace sphier
