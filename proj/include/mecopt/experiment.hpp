#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mecopt/model.hpp"

namespace mecopt {

// How per-task channel power gains are drawn. "rayleigh_power" draws the
// squared amplitude of Rayleigh fading, i.e. an exponential with the given
// mean.
struct GainModel {
  std::string type = "rayleigh_power";
  double mean = 1e-3;
};

// Everything a reproducible sweep needs. params.deadline_s is ignored: the
// deadline for each sweep point comes from T_range_s.
struct ScenarioConfig {
  uint64_t seed = 1;
  std::vector<int> k_range;
  std::vector<double> t_range_s;
  int num_draws = 200;
  std::vector<std::string> methods;
  SystemParams params;
  std::array<double, 2> upload_bits_range{1e5, 5e5};
  std::array<double, 2> download_bits_range{1e5, 5e5};
  std::array<double, 2> workload_cycles_range{5e6, 1.5e7};
  GainModel gain_model;
};

// Throws std::invalid_argument on empty ranges, unordered bounds,
// num_draws < 1, unknown method tags or an unknown gain model.
void validate(const ScenarioConfig& config);

extern const std::vector<std::string> kKnownMethods;

// One aggregated output line per (K, T, method).
struct SweepRow {
  int k = 0;
  double t_s = 0.0;
  std::string method;
  double mean_energy_j = 0.0;
  double std_energy_j = 0.0;
  double mean_makespan_s = 0.0;
  double fastpath_rate = 0.0;
  double mean_walltime_s = 0.0;
  int infeasible_count = 0;  // draws skipped; not part of the CSV contract
};

// Deterministic instance for a sweep point. Every task field comes from its
// own substream keyed by (seed, draw_index, task, field), so the same draw
// index yields nested instances across K and identical instances across T
// and across methods. The deadline is left at config.params.deadline_s;
// sweep code overrides it per point.
Instance generate_instance(const ScenarioConfig& config, int k, int draw_index);

// Solve every (K, T, method, draw) cell and aggregate. Per-instance
// infeasibilities are counted, not fatal. Rows come back sorted by
// (K, T, method). Wall times are measured only when measure_walltime is
// set; otherwise the column is deterministically zero.
std::vector<SweepRow> run_sweep(const ScenarioConfig& config,
                                const std::vector<std::string>& methods,
                                int max_threads = 1,
                                bool measure_walltime = false);

// Render rows as CSV with the pinned header
//   K,T_s,method,mean_energy_J,std_energy_J,mean_makespan_s,fastpath_rate,mean_walltime_s
// using shortest round-trip decimals, one row per SweepRow.
std::string emit_csv(const std::vector<SweepRow>& rows);

// Dispatch a single instance to the solver named by a method tag.
SolveResult run_method(const Instance& instance, const std::string& method,
                       int max_threads = 1);

}  // namespace mecopt
