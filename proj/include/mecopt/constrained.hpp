#pragma once

#include <string>
#include <vector>

#include "mecopt/model.hpp"

namespace mecopt {

// Linear-inequality description of "every download completes by the
// deadline" for a fixed processing order. Variables are stacked as
// y = [upload_s by task .. download_s by task], 2K entries. Every row has
// 0/1 coefficients; a point satisfies the pipeline deadline if and only if
// it satisfies all rows plus the per-variable box.
struct ConvexProgram {
  std::vector<std::vector<double>> rows;  // m x 2K coefficient matrix
  std::vector<double> rhs_s;              // m right-hand sides
  std::vector<std::string> row_labels;    // e.g. "busy_window_2_5"
  double lower_s = 0.0;                   // per-variable lower bound
  double upper_s = 0.0;                   // per-variable upper bound

  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_vars() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

// One row per window (i, j), 1 <= i <= j <= K: uploads of the first i
// positions, executions of positions i..j and downloads of the last K-j+1
// positions must fit in the deadline. One extra row caps the total radio
// time. K(K+1)/2 + 1 rows overall.
ConvexProgram build_deadline_polytope(const Instance& instance,
                                      const Sequence& seq);

// True when a stacked point satisfies every row and box within tol_s.
bool satisfies(const ConvexProgram& program, const std::vector<double>& y,
               double tol_s);

// Minimize the transmit part of the weighted energy subject to the deadline
// polytope, via a log-barrier interior-point method with damped Newton
// centering. Throws InfeasibleError when even instantaneous transmissions
// cannot meet the deadline. The result carries a duality-gap certificate and
// a stationarity residual in its diagnostics.
SolveResult solve_duration_given_sequence(const Instance& instance, const Sequence& seq);

// Same solve, but reuse an already-computed deadline-filling allocation
// (e.g. from solve_negligible on the same instance) to seed the interior
// point, instead of computing one internally.
SolveResult solve_duration_given_sequence(const Instance& instance, const Sequence& seq,
                                 const Allocation& warm_start);

// Independent optimality check: finite-difference gradient of the objective,
// near-active constraint detection, then a nonnegative least-squares fit of
// the multipliers. Returns the max-norm of the stationarity defect divided
// by one plus the gradient max-norm, so one threshold works across the many
// decades of energy scale an instance can sit at. Points away from any
// active constraint report the scaled gradient norm itself.
double kkt_residual(const Instance& instance, const Sequence& seq,
                    const Allocation& alloc);

}  // namespace mecopt
