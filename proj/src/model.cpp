#include "mecopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mecopt {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const TaskSpec& task) {
  require(finite_positive(task.upload_bits), "task: upload_bits must be > 0");
  require(finite_positive(task.workload_cycles),
          "task: workload_cycles must be > 0");
  require(finite_positive(task.download_bits), "task: download_bits must be > 0");
}

void validate(const SystemParams& params) {
  require(finite_positive(params.deadline_s), "params: deadline_s must be > 0");
  require(finite_positive(params.bs_cpu_hz), "params: bs_cpu_hz must be > 0");
  require(finite_positive(params.switched_capacitance),
          "params: switched_capacitance must be > 0");
  require(finite_positive(params.bandwidth_hz),
          "params: bandwidth_hz must be > 0");
  require(finite_positive(params.noise_power_w),
          "params: noise_power_w must be > 0");
  require(std::isfinite(params.bs_weight) && params.bs_weight >= 0.0,
          "params: bs_weight must be >= 0");
}

void validate(const Instance& instance) {
  require(!instance.tasks.empty(), "instance: needs at least one task");
  require(instance.channel_gains.size() == instance.tasks.size(),
          "instance: channel_gains size must match tasks size");
  for (const auto& task : instance.tasks) validate(task);
  for (double gain : instance.channel_gains)
    require(finite_positive(gain), "instance: channel gains must be > 0");
  validate(instance.params);
}

Sequence Sequence::identity(int k) {
  Sequence seq;
  seq.order.resize(static_cast<size_t>(std::max(k, 0)));
  std::iota(seq.order.begin(), seq.order.end(), 0);
  return seq;
}

bool Sequence::is_permutation() const {
  const int k = static_cast<int>(order.size());
  std::vector<bool> seen(static_cast<size_t>(k), false);
  for (int v : order) {
    if (v < 0 || v >= k || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = true;
  }
  return true;
}

double exec_duration(const TaskSpec& task, const SystemParams& params) {
  validate(task);
  require(finite_positive(params.bs_cpu_hz), "params: bs_cpu_hz must be > 0");
  return task.workload_cycles / params.bs_cpu_hz;
}

std::vector<double> exec_durations(const Instance& instance) {
  std::vector<double> out;
  out.reserve(instance.tasks.size());
  for (const auto& task : instance.tasks)
    out.push_back(task.workload_cycles / instance.params.bs_cpu_hz);
  return out;
}

DurationTriple duration_triple(const Instance& instance, const Allocation& alloc) {
  const size_t k = instance.tasks.size();
  if (alloc.upload_s.size() != k || alloc.download_s.size() != k)
    throw std::invalid_argument("allocation size must match instance size");
  DurationTriple triple;
  triple.upload_s = alloc.upload_s;
  triple.exec_s = exec_durations(instance);
  triple.download_s = alloc.download_s;
  return triple;
}

}  // namespace mecopt
