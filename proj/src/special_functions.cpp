#include "mecopt/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mecopt {
namespace {

constexpr double kE = 2.718281828459045235;
constexpr double kLn2 = 0.6931471805599453094;
constexpr double kBranchX = -0.36787944117144233;  // -1/e

// Expansion of W0 around the branch point, p = sqrt(2*(e*x + 1)).
double branch_point_series(double p) {
  const double c2 = -1.0 / 3.0;
  const double c3 = 11.0 / 72.0;
  const double c4 = -43.0 / 540.0;
  const double c5 = 769.0 / 17280.0;
  const double c6 = -221.0 / 8505.0;
  return -1.0 + p * (1.0 + p * (c2 + p * (c3 + p * (c4 + p * (c5 + p * c6)))));
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw std::domain_error("lambert_w0: argument is NaN");
  if (std::isinf(x)) {
    if (x > 0.0) return std::numeric_limits<double>::infinity();
    throw std::domain_error("lambert_w0: argument below -1/e");
  }

  // e*x + 1 via fma keeps precision right at the branch point.
  const double ex1 = std::fma(kE, x, 1.0);
  if (ex1 <= 0.0) {
    if (x >= kBranchX - 1e-15) return -1.0;  // rounding noise below -1/e
    throw std::domain_error("lambert_w0: argument below -1/e");
  }

  const double p = std::sqrt(2.0 * ex1);
  if (p < 1e-4) return branch_point_series(p);  // truncation error ~ p^7

  // Seed an iteration from whichever cheap approximation fits the region.
  double w;
  if (x < -0.25) {
    w = branch_point_series(p);
  } else if (x < kE) {
    w = x >= 0.0 ? std::log1p(x) : x * (1.0 - x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  // Halley refinement on g(w) = w - x e^{-w}: same root as w e^w - x but
  // every intermediate stays O(w), so arguments near DBL_MAX cannot blow up
  // the step. Cubic convergence, 3-5 steps.
  for (int it = 0; it < 64; ++it) {
    const double s = x * std::exp(-w);  // equals w at the root
    const double g = w - s;
    const double gp = 1.0 + s;
    const double denom = gp + 0.5 * g * s / gp;
    const double w_next = w - g / denom;
    if (!std::isfinite(w_next)) break;
    // Accept a one-ulp oscillation as converged: ulp(w)/(1+|w|) < 4e-16.
    const bool done = std::abs(w_next - w) <= 4e-16 * (1.0 + std::abs(w_next));
    w = w_next < -1.0 ? -1.0 : w_next;
    if (done) break;
  }
  return w;
}

double rate_power(double bits_per_s, double bandwidth_hz, double noise_power_w) {
  if (!(bits_per_s >= 0.0))
    throw std::invalid_argument("rate_power: rate must be >= 0");
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("rate_power: bandwidth must be > 0");
  if (!(noise_power_w > 0.0))
    throw std::invalid_argument("rate_power: noise power must be > 0");
  return noise_power_w * std::expm1((bits_per_s / bandwidth_hz) * kLn2);
}

}  // namespace mecopt
