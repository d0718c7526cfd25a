#pragma once

#include "mecopt/model.hpp"

namespace mecopt {

// Completion time of the last download when tasks run through the
// upload -> execute -> download pipeline in the given order, uploads and
// downloads sharing one radio (no two transmissions overlap) and the CPU
// running one task at a time. O(K) prefix recurrences, no simulation.
double makespan(const Sequence& seq, const DurationTriple& durations);

// Same pipeline but uploads and downloads may overlap (two independent
// radio directions). Always <= makespan for the same inputs.
double makespan_relaxed(const Sequence& seq, const DurationTriple& durations);

// Materialize earliest-start times for every stage under the given order.
// With allow_transmit_overlap=false the first download additionally waits
// for the last upload to finish.
Schedule build_schedule(const Sequence& seq, const DurationTriple& durations,
                        bool allow_transmit_overlap = false);

struct ConstraintViolation {
  std::string constraint;  // which rule is broken, e.g. "deadline"
  int task = -1;           // offending task index, -1 when not task-specific
  double amount_s = 0.0;   // by how much
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<ConstraintViolation> violations;
};

// Check a schedule against every pipeline rule: stage durations match,
// per-task ordering, one-at-a-time use of radio and CPU, downloads after
// the final upload, and every download done by the deadline. Tolerance
// 1e-9 s absolute on each comparison.
FeasibilityReport check_feasible(const Schedule& schedule,
                                 const DurationTriple& durations,
                                 double deadline_s);

}  // namespace mecopt
