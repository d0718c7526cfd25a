#pragma once

#include "mecopt/model.hpp"

namespace mecopt {

// Exhaustive minimum over every processing order, each solved to optimality
// by the convex allocator. Throws std::invalid_argument above 6 tasks (the
// factorial blows up) and InfeasibleError when no order fits the deadline.
// Energy ties resolve to the lexicographically smallest order; the result is
// identical for any thread count.
SolveResult solve_optimal(const Instance& instance, int max_threads = 1);

// Two-stage heuristic: durations from the
// execution-time-free relaxation, order from the two-machine rule on the
// resulting stage times, then either keep the relaxed durations (when they
// already meet the deadline pipelined) or run one constrained solve for that
// fixed order. Diagnostics count exactly one closed-form stage and at most
// one convex stage, and record whether the fast path fired.
SolveResult solve_suboptimal(const Instance& instance);

enum class EqualSplitMode {
  kNegligibleExec,  // split the whole deadline across 2K transmissions
  kCountedExec,     // split what execution leaves over
};

// Baseline: every transmission gets the same duration. With kCountedExec the
// shared slice is (T - sum of exec times) / 2K and the identity order is
// attached; throws InfeasibleError when execution alone eats the deadline.
SolveResult baseline_equal_split(const Instance& instance, EqualSplitMode mode);

// Baseline: run the execution-time-free closed form on a shortened horizon
// T - sum of exec times, then process in identity order. Always meets the
// deadline when feasible since the radio budget fits in the shortened
// horizon.
SolveResult baseline_reduced_horizon(const Instance& instance);

}  // namespace mecopt
