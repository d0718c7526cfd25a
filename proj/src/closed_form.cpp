#include "mecopt/closed_form.hpp"

#include <cmath>
#include <stdexcept>

#include "mecopt/energy.hpp"
#include "mecopt/special_functions.hpp"

namespace mecopt {
namespace {

constexpr double kE = 2.718281828459045235;
constexpr double kLn2 = 0.6931471805599453094;

// Duration at which the weighted marginal energy of one transmission equals
// -lambda. `weight` is 1 for uploads and bs_weight for downloads.
double slot_duration(double bits, double gain, double weight, double lambda,
                     const SystemParams& params) {
  const double a = bits * kLn2 / params.bandwidth_hz;
  const double u = lambda * gain / (weight * params.noise_power_w);
  const double w = lambert_w0((u - 1.0) / kE);
  return a / (1.0 + w);
}

double total_duration(const Instance& instance, double lambda) {
  const double beta = instance.params.bs_weight;
  double sum = 0.0;
  for (size_t i = 0; i < instance.tasks.size(); ++i) {
    const auto& task = instance.tasks[i];
    const double gain = instance.channel_gains[i];
    sum += slot_duration(task.upload_bits, gain, 1.0, lambda, instance.params);
    if (beta > 0.0)
      sum +=
          slot_duration(task.download_bits, gain, beta, lambda, instance.params);
  }
  return sum;
}

}  // namespace

Allocation duration_from_lambda(const Instance& instance, double lambda) {
  validate(instance);
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("multiplier must be finite and > 0");
  const double beta = instance.params.bs_weight;
  Allocation alloc;
  alloc.upload_s.reserve(instance.tasks.size());
  alloc.download_s.reserve(instance.tasks.size());
  for (size_t i = 0; i < instance.tasks.size(); ++i) {
    const auto& task = instance.tasks[i];
    const double gain = instance.channel_gains[i];
    alloc.upload_s.push_back(
        slot_duration(task.upload_bits, gain, 1.0, lambda, instance.params));
    alloc.download_s.push_back(
        beta > 0.0 ? slot_duration(task.download_bits, gain, beta, lambda,
                                   instance.params)
                   : 0.0);
  }
  return alloc;
}

LambdaSolution solve_lambda(const Instance& instance) {
  validate(instance);
  const double deadline = instance.params.deadline_s;

  // Bracket: total duration is strictly decreasing in lambda, diverges as
  // lambda -> 0+ and vanishes as lambda -> infinity.
  double lo = instance.params.noise_power_w;
  int iterations = 0;
  while (total_duration(instance, lo) <= deadline) {
    lo *= 0.25;
    if (++iterations > 600 || lo < 1e-300)
      throw std::runtime_error("multiplier search: lower bracket underflow");
  }
  double hi = lo;
  while (total_duration(instance, hi) > deadline) {
    hi *= 4.0;
    if (++iterations > 1200 || hi > 1e300)
      throw std::runtime_error("multiplier search: upper bracket overflow");
  }

  // Bisect on the log scale; the bracket spans at most one factor of 4, so
  // ~60 steps reach machine precision in the multiplier.
  double mid = std::sqrt(lo * hi);
  for (int step = 0; step < 200; ++step) {
    ++iterations;
    mid = std::sqrt(lo * hi);
    const double total = total_duration(instance, mid);
    if (std::abs(total - deadline) <= 1e-13 * deadline) break;
    if (total > deadline)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 4.0 * 2.22e-16 * lo) {
      mid = std::sqrt(lo * hi);
      break;
    }
  }

  LambdaSolution sol;
  sol.lambda_star = mid;
  sol.residual_s = total_duration(instance, mid) - deadline;
  sol.iterations = iterations;
  return sol;
}

SolveResult solve_negligible(const Instance& instance) {
  const LambdaSolution lambda = solve_lambda(instance);
  Allocation alloc = duration_from_lambda(instance, lambda.lambda_star);

  double span = 0.0;
  for (size_t i = 0; i < alloc.upload_s.size(); ++i)
    span += alloc.upload_s[i] + alloc.download_s[i];

  SolveResult result;
  result.method = "negligible";
  result.allocation = std::move(alloc);
  result.sequence = std::nullopt;
  result.energy = total_weighted_energy(instance, result.allocation);
  result.energy_j = result.energy.total_weighted_j;
  result.makespan_s = span;
  result.diagnostics.lambda = lambda.lambda_star;
  result.diagnostics.bisect_iterations = lambda.iterations;
  result.diagnostics.closed_form_solves = 1;
  result.diagnostics.download_degenerate = instance.params.bs_weight == 0.0;
  return result;
}

}  // namespace mecopt
