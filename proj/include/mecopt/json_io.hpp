#pragma once

#include <string>

#include "mecopt/experiment.hpp"
#include "mecopt/model.hpp"

namespace mecopt {

// Parse an instance from JSON text:
//   {"tasks": [{"upload_bits":..,"workload_cycles":..,"download_bits":..}],
//    "channel_gains": [..],
//    "params": {"deadline_s":..,"bs_cpu_hz":..,"switched_capacitance":..,
//               "bandwidth_hz":..,"noise_power_w":..,"bs_weight":..}}
// Malformed input throws std::invalid_argument naming the offending field
// (or the parse position for syntax errors). The parsed instance is
// validated before being returned.
Instance parse_instance_json(const std::string& text);
std::string emit_instance_json(const Instance& instance);

// Sweep configuration with ScenarioConfig fields; unknown keys are rejected.
// seed, K_range, T_range_s and params are required; everything else falls
// back to the documented defaults.
ScenarioConfig parse_config_json(const std::string& text);
std::string emit_config_json(const ScenarioConfig& config);

// Solver output: method, energy, makespan, allocation, the 1-based task
// sequence and the materialized schedule (both omitted when the result has
// no sequence), per-task energy breakdown and diagnostics. Non-finite
// entries (e.g. download energies in the degenerate bs_weight == 0 case)
// serialize as null.
std::string emit_result_json(const Instance& instance, const SolveResult& result);

// Small file helpers; read/write failures throw std::invalid_argument with
// the path in the message.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Instance load_instance(const std::string& path);
ScenarioConfig load_config(const std::string& path);

}  // namespace mecopt
