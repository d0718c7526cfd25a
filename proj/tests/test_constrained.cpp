#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mecopt/closed_form.hpp"
#include "mecopt/constrained.hpp"
#include "mecopt/energy.hpp"
#include "mecopt/errors.hpp"
#include "mecopt/rng.hpp"
#include "mecopt/schedule.hpp"
#include "oracles.hpp"

using namespace mecopt;

namespace {

std::vector<double> stack(const Allocation& alloc) {
  std::vector<double> y(alloc.upload_s);
  y.insert(y.end(), alloc.download_s.begin(), alloc.download_s.end());
  return y;
}

Allocation unstack(const std::vector<double>& y) {
  const size_t k = y.size() / 2;
  return Allocation{{y.begin(), y.begin() + static_cast<long>(k)},
                    {y.begin() + static_cast<long>(k), y.end()}};
}

Sequence random_order(int k, SplitMix64& rng) {
  auto order = Sequence::identity(k).order;
  for (int i = k - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_uniform(0.0, i + 1.0));
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
  }
  return Sequence{order};
}

}  // namespace

TEST_CASE("polytope has one row per busy window plus the radio cap") {
  SplitMix64 rng(31001);
  const auto instance = testing::random_instance(4, 0.08, 0.2, 6e9, rng);
  const auto program = build_deadline_polytope(instance, Sequence::identity(4));

  CHECK(program.num_rows() == 4 * 5 / 2 + 1);
  CHECK(program.num_vars() == 8);
  CHECK(program.upper_s == 0.08);
  CHECK(program.row_labels.front() == "busy_window_1_1");
  CHECK(program.row_labels.back() == "radio_total");

  Sequence not_a_permutation{{0, 0, 1, 2}};
  CHECK_THROWS_AS(build_deadline_polytope(instance, not_a_permutation),
                  std::invalid_argument);
}

TEST_CASE("polytope membership is exactly the pipeline deadline") {
  SplitMix64 rng(31002);
  for (int trial = 0; trial < 150; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_uniform(0.0, 4.0));
    const double deadline = 0.08;
    const auto instance =
        testing::random_instance(k, deadline, 0.3, 6e9, rng);
    const auto seq = random_order(k, rng);
    const auto program = build_deadline_polytope(instance, seq);

    // Sample points on both sides of the boundary.
    const double scale = rng.next_uniform(0.5, 1.4);
    const auto y = testing::simplex_point(2 * k, scale * deadline, rng);
    const auto alloc = unstack(y);
    const double span = makespan(seq, duration_triple(instance, alloc));

    CAPTURE(k);
    CAPTURE(span);
    if (span <= deadline - 1e-9)
      CHECK(satisfies(program, y, 1e-12));
    else if (span >= deadline + 1e-9)
      CHECK_FALSE(satisfies(program, y, 1e-12));
  }
}

TEST_CASE("solver result is feasible, certified and reproducible") {
  SplitMix64 rng(31003);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_uniform(0.0, 4.0));
    const double weight = rng.next_uniform(0.05, 1.0);
    const auto instance = testing::random_instance(k, 0.08, weight, 9e9, rng);
    const auto seq = random_order(k, rng);

    const auto result = solve_duration_given_sequence(instance, seq);
    CAPTURE(k);
    CAPTURE(trial);

    CHECK(result.makespan_s <= 0.08 * (1.0 + 1e-9));
    CHECK(result.diagnostics.convex_solves == 1);
    CHECK(result.diagnostics.duality_gap >= 0.0);
    CHECK(result.diagnostics.duality_gap <= 1e-6 * (1.0 + result.energy_j));
    CHECK(result.diagnostics.kkt_residual >= 0.0);
    CHECK(result.diagnostics.kkt_residual <= 1e-8);

    // Feasible for the polytope and for the materialized schedule.
    const auto program = build_deadline_polytope(instance, seq);
    CHECK(satisfies(program, stack(result.allocation), 1e-9));
    const auto schedule =
        build_schedule(seq, duration_triple(instance, result.allocation));
    CHECK(check_feasible(schedule, duration_triple(instance, result.allocation),
                         0.08)
              .feasible);

    // Never below the deadline-relaxation bound.
    const auto relaxed = solve_negligible(instance);
    CHECK(result.energy_j >= relaxed.energy_j * (1.0 - 1e-9));

    // Explicit warm start reproduces the internally seeded solve bit for bit.
    const auto warmed =
        solve_duration_given_sequence(instance, seq, relaxed.allocation);
    CHECK(warmed.energy_j == result.energy_j);
    CHECK(warmed.allocation.upload_s == result.allocation.upload_s);
    CHECK(warmed.allocation.download_s == result.allocation.download_s);
  }
}

TEST_CASE("solver matches a zoomed grid search on a small case") {
  SplitMix64 rng(31004);
  const auto instance = testing::random_instance(2, 0.08, 0.25, 6e9, rng);
  const Sequence seq = Sequence::identity(2);
  const auto result = solve_duration_given_sequence(instance, seq);

  std::vector<double> cells;
  const double grid_best =
      testing::zoom_grid_best_energy(instance, seq, 7, 6, &cells);

  // The solver can only be better than any feasible grid point...
  CHECK(result.energy_j <= grid_best + 1e-8 * (1.0 + grid_best));
  // ...and the refined grid must land in its neighborhood.
  CHECK(grid_best <= result.energy_j * (1.0 + 0.02));
}

TEST_CASE("vanishing execution times reduce to the deadline-filling closed form") {
  SplitMix64 rng(31005);
  for (int trial = 0; trial < 6; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_uniform(0.0, 4.0));
    auto instance = testing::random_instance(k, 0.08, 0.4, 6e9, rng);
    for (auto& task : instance.tasks) task.workload_cycles = 1.0;  // ~2e-10 s

    const auto seq = random_order(k, rng);
    const auto constrained = solve_duration_given_sequence(instance, seq);
    const auto relaxed = solve_negligible(instance);
    CAPTURE(k);
    CHECK(constrained.energy_j ==
          doctest::Approx(relaxed.energy_j).epsilon(1e-6));
  }
}

TEST_CASE("impossible execution load reports the binding chain") {
  SplitMix64 rng(31006);
  auto instance = testing::random_instance(3, 0.08, 0.3, 6e9, rng);
  for (auto& task : instance.tasks) task.workload_cycles = 6e9 * 0.05;

  try {
    solve_duration_given_sequence(instance, Sequence::identity(3));
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& error) {
    CHECK(error.bound() == "execution_chain");
    CHECK(error.available_s() == 0.08);
    CHECK(error.required_s() > error.available_s());
  }
}

TEST_CASE("stationarity residual separates optima from other points") {
  SplitMix64 rng(31007);
  const auto instance = testing::random_instance(3, 0.08, 0.5, 6e9, rng);
  const auto seq = random_order(3, rng);
  const auto result = solve_duration_given_sequence(instance, seq);

  const double at_optimum =
      kkt_residual(instance, seq, result.allocation);
  CHECK(at_optimum <= 1e-8);

  // Shrinking one slot breaks marginal equalization by a visible margin.
  auto bent = result.allocation;
  bent.upload_s[0] *= 0.9;
  const double off_optimum = kkt_residual(instance, seq, bent);
  CHECK(off_optimum > 1e-6);
  CHECK(off_optimum > 100.0 * std::max(at_optimum, 1e-12));

  // Deep in the interior nothing is active: the residual is the plain
  // gradient norm, which cannot vanish for a strictly decreasing energy.
  auto interior = result.allocation;
  for (double& t : interior.upload_s) t *= 0.45;
  for (double& t : interior.download_s) t *= 0.45;
  CHECK(kkt_residual(instance, seq, interior) > 1e-6);
}
