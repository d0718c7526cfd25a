#pragma once

#include "mecopt/model.hpp"

namespace mecopt {

// Order tasks by the classic two-machine rule applied to the synthetic
// stage times (upload + exec, exec + download): tasks with upload+exec
// strictly below exec+download go first, sorted by upload+exec ascending;
// the rest follow sorted by exec+download descending. Ties keep the lower
// task index first. Deterministic for identical inputs.
Sequence johnson_sequence(const DurationTriple& durations);

// Sufficient condition under which the rule above is makespan-optimal for
// the overlap-relaxed pipeline: every upload at least as long as every
// execution stage.
bool johnson_condition_holds(const DurationTriple& durations);

enum class SequenceObjective {
  kMakespan,         // single shared radio
  kMakespanRelaxed,  // uploads and downloads may overlap
};

struct BruteForceResult {
  Sequence best;            // lexicographically smallest among the ties
  double makespan_s = 0.0;  // objective value of the minimizers
  std::vector<Sequence> ties;  // all minimizers, lexicographic order
};

// Exhaustive sweep over every task order; throws std::invalid_argument for
// more than 8 tasks. Ties are exact floating-point equalities. The sweep may
// be partitioned across threads; output is identical for any thread count.
BruteForceResult brute_force_sequence(const DurationTriple& durations,
                                      SequenceObjective objective,
                                      int max_threads = 1);

}  // namespace mecopt
