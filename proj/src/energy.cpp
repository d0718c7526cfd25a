#include "mecopt/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mecopt/special_functions.hpp"

namespace mecopt {
namespace {

constexpr double kLn2 = 0.6931471805599453094;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_transmit_args(double bits, double duration_s, double gain,
                         const SystemParams& params) {
  if (!(bits >= 0.0) || !std::isfinite(bits))
    throw std::invalid_argument("transmit: bits must be finite and >= 0");
  if (!(duration_s >= 0.0))
    throw std::invalid_argument("transmit: duration must be >= 0");
  if (!(gain > 0.0) || !std::isfinite(gain))
    throw std::invalid_argument("transmit: channel gain must be > 0");
  if (!(params.bandwidth_hz > 0.0) || !(params.noise_power_w > 0.0))
    throw std::invalid_argument("transmit: bandwidth and noise must be > 0");
}

}  // namespace

double required_power(double bits, double duration_s, double gain,
                      const SystemParams& params) {
  check_transmit_args(bits, duration_s, gain, params);
  if (bits == 0.0) return 0.0;
  if (duration_s == 0.0) return kInf;
  return rate_power(bits / duration_s, params.bandwidth_hz,
                    params.noise_power_w) /
         gain;
}

double transmit_energy(double bits, double duration_s, double gain,
                       const SystemParams& params) {
  check_transmit_args(bits, duration_s, gain, params);
  if (bits == 0.0) return 0.0;
  if (duration_s == 0.0) return kInf;  // avoid 0 * inf
  const double power = rate_power(bits / duration_s, params.bandwidth_hz,
                                  params.noise_power_w) /
                       gain;
  return std::isinf(power) ? kInf : duration_s * power;
}

double transmit_energy_ddt(double bits, double duration_s, double gain,
                           const SystemParams& params) {
  check_transmit_args(bits, duration_s, gain, params);
  if (bits == 0.0) return 0.0;
  if (duration_s == 0.0) return -kInf;
  const double x = bits * kLn2 / (params.bandwidth_hz * duration_s);
  // d/dt [ t * (n0/g) * (e^(a/t) - 1) ] = (n0/g) * (expm1(x) - x e^x)
  const double scale = params.noise_power_w / gain;
  const double ex = std::exp(x);
  if (std::isinf(ex)) return -kInf;
  return scale * (std::expm1(x) - x * ex);
}

double transmit_energy_d2dt2(double bits, double duration_s, double gain,
                             const SystemParams& params) {
  check_transmit_args(bits, duration_s, gain, params);
  if (bits == 0.0) return 0.0;
  if (duration_s == 0.0) return kInf;
  const double x = bits * kLn2 / (params.bandwidth_hz * duration_s);
  const double scale = params.noise_power_w / gain;
  return scale * std::exp(x) * x * x / duration_s;
}

double upload_energy(const TaskSpec& task, double duration_s, double gain,
                     const SystemParams& params) {
  return transmit_energy(task.upload_bits, duration_s, gain, params);
}

double download_energy(const TaskSpec& task, double duration_s, double gain,
                       const SystemParams& params) {
  return transmit_energy(task.download_bits, duration_s, gain, params);
}

double exec_energy(const TaskSpec& task, const SystemParams& params) {
  if (!(task.workload_cycles > 0.0))
    throw std::invalid_argument("exec_energy: workload_cycles must be > 0");
  if (!(params.switched_capacitance > 0.0) || !(params.bs_cpu_hz > 0.0))
    throw std::invalid_argument(
        "exec_energy: switched_capacitance and bs_cpu_hz must be > 0");
  return params.switched_capacitance * task.workload_cycles *
         params.bs_cpu_hz * params.bs_cpu_hz;
}

EnergyBreakdown total_weighted_energy(const Instance& instance,
                                      const Allocation& alloc) {
  const size_t k = instance.tasks.size();
  if (alloc.upload_s.size() != k || alloc.download_s.size() != k)
    throw std::invalid_argument("allocation size must match instance size");

  EnergyBreakdown out;
  out.upload_j.reserve(k);
  out.exec_j.reserve(k);
  out.download_j.reserve(k);
  double sum_u = 0.0, sum_e = 0.0, sum_d = 0.0;
  for (size_t i = 0; i < k; ++i) {
    const auto& task = instance.tasks[i];
    const double gain = instance.channel_gains[i];
    const double eu =
        upload_energy(task, alloc.upload_s[i], gain, instance.params);
    const double ee = exec_energy(task, instance.params);
    const double ed =
        download_energy(task, alloc.download_s[i], gain, instance.params);
    out.upload_j.push_back(eu);
    out.exec_j.push_back(ee);
    out.download_j.push_back(ed);
    sum_u += eu;
    sum_e += ee;
    sum_d += ed;
  }
  const double beta = instance.params.bs_weight;
  out.total_weighted_j = beta > 0.0 ? sum_u + beta * (sum_e + sum_d) : sum_u;
  return out;
}

double variable_energy(const Instance& instance, const Allocation& alloc) {
  const size_t k = instance.tasks.size();
  if (alloc.upload_s.size() != k || alloc.download_s.size() != k)
    throw std::invalid_argument("allocation size must match instance size");
  const double beta = instance.params.bs_weight;
  double sum_u = 0.0, sum_d = 0.0;
  for (size_t i = 0; i < k; ++i) {
    const auto& task = instance.tasks[i];
    const double gain = instance.channel_gains[i];
    sum_u += upload_energy(task, alloc.upload_s[i], gain, instance.params);
    if (beta > 0.0)
      sum_d += download_energy(task, alloc.download_s[i], gain, instance.params);
  }
  return beta > 0.0 ? sum_u + beta * sum_d : sum_u;
}

}  // namespace mecopt
