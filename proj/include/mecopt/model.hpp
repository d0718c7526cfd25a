#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mecopt {

// One offloaded task: bits to upload, CPU cycles to run at the base station,
// bits to download back.
struct TaskSpec {
  double upload_bits = 0.0;
  double workload_cycles = 0.0;
  double download_bits = 0.0;
};

// System-wide constants shared by every task.
struct SystemParams {
  double deadline_s = 0.0;           // hard completion deadline T
  double bs_cpu_hz = 0.0;            // base-station CPU frequency F
  double switched_capacitance = 0.0; // CPU energy coefficient mu
  double bandwidth_hz = 0.0;         // channel bandwidth B
  double noise_power_w = 0.0;        // receiver noise power n0
  double bs_weight = 0.0;            // weight beta on base-station energy
};

struct Instance {
  std::vector<TaskSpec> tasks;
  std::vector<double> channel_gains;  // per-task channel power gain |h|^2
  SystemParams params;

  int size() const { return static_cast<int>(tasks.size()); }
};

// Throw std::invalid_argument on out-of-range fields. Uploads/downloads and
// workloads must be positive; gains positive; params positive except
// bs_weight which only needs to be >= 0.
void validate(const TaskSpec& task);
void validate(const SystemParams& params);
void validate(const Instance& instance);

// Transmission durations chosen by a solver, indexed by task.
struct Allocation {
  std::vector<double> upload_s;
  std::vector<double> download_s;
};

// A processing order: order[position] = task index (0-based).
struct Sequence {
  std::vector<int> order;

  static Sequence identity(int k);
  bool is_permutation() const;
};

// Per-task durations of the three pipeline stages, indexed by task.
struct DurationTriple {
  std::vector<double> upload_s;
  std::vector<double> exec_s;
  std::vector<double> download_s;
};

// Start /completion times for every task's three stages, seconds from zero.
struct Schedule {
  Sequence sequence;
  std::vector<double> start_upload_s, complete_upload_s;
  std::vector<double> start_exec_s, complete_exec_s;
  std::vector<double> start_download_s, complete_download_s;
};

// Execution time of one task on the base-station CPU.
double exec_duration(const TaskSpec& task, const SystemParams& params);
std::vector<double> exec_durations(const Instance& instance);

// Bundle an allocation with the instance's execution times.
DurationTriple duration_triple(const Instance& instance, const Allocation& alloc);

// Per-task energies. upload_j is the user-side radio energy; exec_j and
// download_j are base-station-side and enter the objective scaled by
// bs_weight.
struct EnergyBreakdown {
  std::vector<double> upload_j;
  std::vector<double> exec_j;
  std::vector<double> download_j;
  double total_weighted_j = 0.0;
};

// Counters and certificates a solver attaches to its result.
struct SolveDiagnostics {
  double lambda = 0.0;          // deadline multiplier from a closed-form stage
  double kkt_residual = -1.0;   // stationarity residual, -1 when not computed
  double duality_gap = -1.0;    // barrier gap certificate, -1 when not computed
  int bisect_iterations = 0;
  int newton_iterations = 0;
  int closed_form_solves = 0;
  int convex_solves = 0;
  bool fast_path = false;           // sequencing stage met the deadline as-is
  bool johnson_condition = false;   // sufficient condition for order optimality
  bool download_degenerate = false; // bs_weight == 0 collapses download time
};

struct SolveResult {
  std::string method;
  Allocation allocation;
  std::optional<Sequence> sequence;  // absent for the no-execution-time model
  EnergyBreakdown energy;
  double energy_j = 0.0;    // weighted objective value
  double makespan_s = 0.0;  // completion time of the last download
  SolveDiagnostics diagnostics;
};

}  // namespace mecopt
