#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <utility>

#include "sisfront/model.hpp"

namespace sisfront::testing {

inline ModelParams make(double beta, double gamma, double sigma, double c = 1.0, double eps = 0.01,
                        double alpha = 1.0, Regime regime = Regime::Case2SlowInfected) {
  RawParams r;
  r.beta = beta;
  r.gamma = gamma;
  r.sigma = sigma;
  r.c = c;
  r.epsilon = eps;
  r.alpha = alpha;
  r.regime = regime;
  return validate_params(r);
}

/// Fixed-seed generator of admissible parameter sets.
class ParamGen {
 public:
  explicit ParamGen(unsigned seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// gamma in [0.2, 2], sigma in [0, 2], beta = gamma(1+sigma) * [1.1, 4], c in [0.2, 5].
  ModelParams next(Regime regime = Regime::Case2SlowInfected) {
    const double gamma = uniform(0.2, 2.0);
    const double sigma = uniform(0.0, 2.0);
    const double beta = gamma * (1.0 + sigma) * uniform(1.1, 4.0);
    return make(beta, gamma, sigma, uniform(0.2, 5.0), 0.01, uniform(0.5, 2.0), regime);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Eigenvalues of [[a, b], [c, d]] from trace and determinant.
inline std::pair<std::complex<double>, std::complex<double>> eig2(double a, double b, double c, double d) {
  const double tr = a + d, det = a * d - b * c;
  const std::complex<double> root = std::sqrt(std::complex<double>(tr * tr / 4.0 - det, 0.0));
  return {tr / 2.0 + root, tr / 2.0 - root};
}

/// 2x2 central-difference Jacobian of f at (x, y), step h.
template <typename F>
std::array<double, 4> fd_jacobian2(F&& f, double x, double y, double h = 1e-6) {
  const auto fxp = f(x + h, y), fxm = f(x - h, y), fyp = f(x, y + h), fym = f(x, y - h);
  return {(fxp[0] - fxm[0]) / (2 * h), (fyp[0] - fym[0]) / (2 * h), (fxp[1] - fxm[1]) / (2 * h),
          (fyp[1] - fym[1]) / (2 * h)};
}

}  // namespace sisfront::testing
