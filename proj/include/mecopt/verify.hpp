#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mecopt {

struct SuiteReport {
  std::string suite;
  int trials = 0;
  int failures = 0;
  bool passed() const { return trials > 0 && failures == 0; }
};

// Self-contained property suites behind the CLI `verify` command. Each runs
// `trials` randomized checks from the given seed and counts failures.
// trials < 1 throws std::invalid_argument.

// Pipeline timing formulas against materialized earliest-start schedules,
// both radio-exclusive and overlap-allowed, to 1e-12 s.
SuiteReport verify_makespan(int trials, uint64_t seed);

// Ordering rule against exhaustive search: exact optimality under the
// dominance condition, and every relaxed-optimal order staying optimal for
// the radio-exclusive objective.
SuiteReport verify_johnson(int trials, uint64_t seed);

// Allocator optimality certificates: deadline activity and marginal-energy
// equalization for the closed form; stationarity residual and deadline
// satisfaction for the convex solver.
SuiteReport verify_kkt(int trials, uint64_t seed);

// All of the above, in order.
std::vector<SuiteReport> verify_all(int trials, uint64_t seed);

}  // namespace mecopt
