#include "mecopt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mecopt/closed_form.hpp"
#include "mecopt/constrained.hpp"
#include "mecopt/energy.hpp"
#include "mecopt/model.hpp"
#include "mecopt/rng.hpp"
#include "mecopt/schedule.hpp"
#include "mecopt/sequencing.hpp"

namespace mecopt {
namespace {

void check_trials(int trials) {
  if (trials < 1) throw std::invalid_argument("verify: trials must be >= 1");
}

Sequence random_sequence(int k, SplitMix64& rng) {
  Sequence seq = Sequence::identity(k);
  for (int i = k - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_u64() % static_cast<uint64_t>(i + 1));
    std::swap(seq.order[static_cast<size_t>(i)],
              seq.order[static_cast<size_t>(j)]);
  }
  return seq;
}

DurationTriple random_triple(int k, SplitMix64& rng, double zero_chance) {
  DurationTriple d;
  auto draw = [&]() {
    if (rng.next_unit() < zero_chance) return 0.0;
    return rng.next_uniform(0.0, 2.0);
  };
  for (int i = 0; i < k; ++i) {
    d.upload_s.push_back(draw());
    d.exec_s.push_back(draw());
    d.download_s.push_back(draw());
  }
  return d;
}

Instance random_instance(int k, SplitMix64& rng) {
  Instance instance;
  instance.params.deadline_s = rng.next_uniform(0.03, 0.1);
  instance.params.bs_cpu_hz = 6e9;
  instance.params.switched_capacitance = 1e-29;
  instance.params.bandwidth_hz = 1e6;
  instance.params.noise_power_w = 1e-9;
  instance.params.bs_weight = rng.next_uniform(0.05, 1.0);
  for (int i = 0; i < k; ++i) {
    TaskSpec task;
    task.upload_bits = rng.next_uniform(1e5, 5e5);
    task.download_bits = rng.next_uniform(1e5, 5e5);
    task.workload_cycles = rng.next_uniform(5e6, 1.5e7);
    instance.tasks.push_back(task);
    instance.channel_gains.push_back(rng.next_exponential(1e-3));
  }
  return instance;
}

}  // namespace

SuiteReport verify_makespan(int trials, uint64_t seed) {
  check_trials(trials);
  SuiteReport report{"makespan", trials, 0};
  SplitMix64 rng(mix_key({seed, 0x6d616b65}));
  for (int t = 0; t < trials; ++t) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 10);
    const DurationTriple d = random_triple(k, rng, 0.1);
    const Sequence seq = random_sequence(k, rng);

    const Schedule exclusive = build_schedule(seq, d, false);
    const Schedule overlapped = build_schedule(seq, d, true);
    double done_exclusive = 0.0, done_overlapped = 0.0;
    for (int i = 0; i < k; ++i) {
      done_exclusive =
          std::max(done_exclusive, exclusive.complete_download_s[static_cast<size_t>(i)]);
      done_overlapped = std::max(
          done_overlapped, overlapped.complete_download_s[static_cast<size_t>(i)]);
    }
    const bool ok =
        std::abs(makespan(seq, d) - done_exclusive) <= 1e-12 &&
        std::abs(makespan_relaxed(seq, d) - done_overlapped) <= 1e-12 &&
        makespan_relaxed(seq, d) <= makespan(seq, d);
    if (!ok) ++report.failures;
  }
  return report;
}

SuiteReport verify_johnson(int trials, uint64_t seed) {
  check_trials(trials);
  SuiteReport report{"johnson", trials, 0};
  SplitMix64 rng(mix_key({seed, 0x6a6f686e}));
  for (int t = 0; t < trials; ++t) {
    bool ok = true;

    // Dominant uploads: rule must match the exhaustive optimum exactly.
    {
      const int k = 2 + static_cast<int>(rng.next_u64() % 6);
      DurationTriple d;
      for (int i = 0; i < k; ++i) {
        d.upload_s.push_back(rng.next_uniform(1.0, 2.0));
        d.exec_s.push_back(rng.next_uniform(0.0, 0.9));
        d.download_s.push_back(rng.next_uniform(0.1, 2.5));
      }
      if (!johnson_condition_holds(d)) ok = false;
      const double rule = makespan_relaxed(johnson_sequence(d), d);
      const auto exhaustive =
          brute_force_sequence(d, SequenceObjective::kMakespanRelaxed);
      if (rule != exhaustive.makespan_s) ok = false;
    }

    // Any relaxed-optimal order must stay optimal once the radio is shared.
    {
      const int k = 2 + static_cast<int>(rng.next_u64() % 5);
      const DurationTriple d = random_triple(k, rng, 0.0);
      const auto relaxed =
          brute_force_sequence(d, SequenceObjective::kMakespanRelaxed);
      const auto constrained =
          brute_force_sequence(d, SequenceObjective::kMakespan);
      for (const Sequence& seq : relaxed.ties)
        if (makespan(seq, d) != constrained.makespan_s) ok = false;
    }

    if (!ok) ++report.failures;
  }
  return report;
}

SuiteReport verify_kkt(int trials, uint64_t seed) {
  check_trials(trials);
  SuiteReport report{"kkt", trials, 0};
  SplitMix64 rng(mix_key({seed, 0x6b6b74}));
  for (int t = 0; t < trials; ++t) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 4);
    const Instance instance = random_instance(k, rng);
    bool ok = true;

    // Closed form: the deadline is exactly filled and every weighted
    // marginal energy sits at -lambda*.
    const SolveResult relaxed = solve_negligible(instance);
    const double deadline = instance.params.deadline_s;
    double span = 0.0;
    for (int i = 0; i < k; ++i)
      span += relaxed.allocation.upload_s[static_cast<size_t>(i)] +
              relaxed.allocation.download_s[static_cast<size_t>(i)];
    if (std::abs(span - deadline) > 1e-9 * deadline) ok = false;
    const double lambda = relaxed.diagnostics.lambda;
    for (int i = 0; i < k; ++i) {
      const auto& task = instance.tasks[static_cast<size_t>(i)];
      const double gain = instance.channel_gains[static_cast<size_t>(i)];
      const double mu = transmit_energy_ddt(
          task.upload_bits, relaxed.allocation.upload_s[static_cast<size_t>(i)],
          gain, instance.params);
      const double md =
          instance.params.bs_weight *
          transmit_energy_ddt(task.download_bits,
                              relaxed.allocation.download_s[static_cast<size_t>(i)],
                              gain, instance.params);
      if (std::abs(mu + lambda) > 1e-6 * lambda) ok = false;
      if (std::abs(md + lambda) > 1e-6 * lambda) ok = false;
    }

    // Convex solver: stationarity certificate and deadline satisfaction for
    // a random order.
    const Sequence seq = random_sequence(k, rng);
    const SolveResult constrained = solve_duration_given_sequence(instance, seq);
    if (constrained.diagnostics.kkt_residual > 1e-8) ok = false;
    if (constrained.makespan_s > deadline + 1e-9) ok = false;

    if (!ok) ++report.failures;
  }
  return report;
}

std::vector<SuiteReport> verify_all(int trials, uint64_t seed) {
  return {verify_makespan(trials, seed), verify_johnson(trials, seed),
          verify_kkt(trials, seed)};
}

}  // namespace mecopt
