#pragma once

#include "mecopt/model.hpp"

namespace mecopt {

// Result of the one-dimensional search for the deadline multiplier.
struct LambdaSolution {
  double lambda_star = 0.0;
  double residual_s = 0.0;  // total duration at lambda_star minus deadline
  int iterations = 0;
};

// Duration of each transmission at a given multiplier value: the point where
// the (weighted) marginal energy of every slot equals -lambda. Downloads
// collapse to zero when bs_weight == 0. Throws std::invalid_argument for
// lambda <= 0 unless bs_weight handling makes the slot degenerate.
Allocation duration_from_lambda(const Instance& instance, double lambda);

// Find the multiplier at which the allocation exactly fills the deadline:
// sum of all transmit durations == deadline_s. Total duration is strictly
// decreasing in lambda, so a bracketed bisection always converges; the
// residual is driven below 1e-10 * deadline_s.
LambdaSolution solve_lambda(const Instance& instance);

// Optimal transmit durations when execution time is not counted against the
// deadline: every slot fills the deadline jointly and all weighted marginal
// energies coincide. The returned makespan is the plain sum of durations and
// no sequence is attached.
SolveResult solve_negligible(const Instance& instance);

}  // namespace mecopt
