#pragma once

#include "mecopt/model.hpp"

namespace mecopt {

// Transmit power needed to move `bits` in `duration_s` over a channel with
// power gain `gain`. Returns +infinity when duration_s == 0 and bits > 0.
double required_power(double bits, double duration_s, double gain,
                      const SystemParams& params);

// Energy = power * duration for the same transmission; +infinity when the
// duration is zero but bits remain. Strictly convex and decreasing in
// duration_s for bits > 0.
double transmit_energy(double bits, double duration_s, double gain,
                       const SystemParams& params);

// First and second derivatives of transmit_energy w.r.t. duration; used by
// multiplier searches and the convex allocator.
double transmit_energy_ddt(double bits, double duration_s, double gain,
                           const SystemParams& params);
double transmit_energy_d2dt2(double bits, double duration_s, double gain,
                             const SystemParams& params);

double upload_energy(const TaskSpec& task, double duration_s, double gain,
                     const SystemParams& params);
double download_energy(const TaskSpec& task, double duration_s, double gain,
                       const SystemParams& params);

// CPU energy at the base station; independent of any time allocation.
double exec_energy(const TaskSpec& task, const SystemParams& params);

// Full per-task breakdown plus the weighted total
//   sum_k upload_j[k] + bs_weight * (exec_j[k] + download_j[k]).
// With bs_weight == 0 the total is the upload sum alone, even when download
// entries are +infinity sentinels from zero-duration slots.
EnergyBreakdown total_weighted_energy(const Instance& instance,
                                      const Allocation& alloc);

// The part of the objective a time allocation can influence: weighted upload
// plus download energy, no CPU term. +infinity propagates, never traps.
double variable_energy(const Instance& instance, const Allocation& alloc);

}  // namespace mecopt
