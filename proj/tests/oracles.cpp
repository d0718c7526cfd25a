#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <limits>

#include "mecopt/schedule.hpp"

namespace mecopt::testing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double stage_duration(const DurationTriple& t, int stage, int task) {
  switch (stage) {
    case 0:
      return t.upload_s[static_cast<size_t>(task)];
    case 1:
      return t.exec_s[static_cast<size_t>(task)];
    default:
      return t.download_s[static_cast<size_t>(task)];
  }
}

}  // namespace

double simulated_completion(const Sequence& seq, const DurationTriple& t,
                            bool allow_transmit_overlap) {
  const int k = static_cast<int>(seq.order.size());
  constexpr double kUnscheduled = -1.0;
  // done[task][stage]; durations are nonnegative, so -1 is unreachable.
  std::vector<std::array<double, 3>> done(
      static_cast<size_t>(k), {kUnscheduled, kUnscheduled, kUnscheduled});
  std::array<double, 3> machine_free{0.0, 0.0, 0.0};
  std::array<int, 3> queue_pos{0, 0, 0};
  int uploads_left = k;
  double finish = 0.0;

  for (int remaining = 3 * k; remaining > 0; --remaining) {
    int pick = -1;
    double pick_start = kInf;
    for (int m = 0; m < 3; ++m) {
      if (queue_pos[m] >= k) continue;
      const int task = seq.order[static_cast<size_t>(queue_pos[m])];
      double ready = 0.0;
      if (m > 0) {
        ready = done[static_cast<size_t>(task)][static_cast<size_t>(m - 1)];
        if (ready == kUnscheduled) continue;
      }
      if (m == 2 && !allow_transmit_overlap && uploads_left > 0)
        continue;  // the shared radio is still owed to uploads
      double start = std::max(ready, machine_free[static_cast<size_t>(m)]);
      if (m == 2 && !allow_transmit_overlap)
        start = std::max(start, machine_free[0]);
      if (start < pick_start) {
        pick_start = start;
        pick = m;
      }
    }
    assert(pick >= 0 && "dispatch loop stalled");
    const int task = seq.order[static_cast<size_t>(queue_pos[pick])];
    const double end = pick_start + stage_duration(t, pick, task);
    done[static_cast<size_t>(task)][static_cast<size_t>(pick)] = end;
    machine_free[static_cast<size_t>(pick)] = end;
    queue_pos[pick] += 1;
    if (pick == 0) --uploads_left;
    finish = std::max(finish, end);
  }
  return finish;
}

namespace {

void orders_dfs(int k, std::vector<int>& prefix, std::vector<bool>& used,
                std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == k) {
    out.push_back(prefix);
    return;
  }
  for (int v = 0; v < k; ++v) {
    if (used[static_cast<size_t>(v)]) continue;
    used[static_cast<size_t>(v)] = true;
    prefix.push_back(v);
    orders_dfs(k, prefix, used, out);
    prefix.pop_back();
    used[static_cast<size_t>(v)] = false;
  }
}

double direct_transmit(double bits, double gain, double duration,
                       const SystemParams& p) {
  if (bits <= 0.0) return 0.0;
  if (duration <= 0.0) return kInf;
  const double power =
      p.noise_power_w / gain *
      (std::pow(2.0, bits / duration / p.bandwidth_hz) - 1.0);
  return duration * power;
}

}  // namespace

std::vector<std::vector<int>> all_orders(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  std::vector<bool> used(static_cast<size_t>(k), false);
  orders_dfs(k, prefix, used, out);
  return out;
}

double direct_weighted_energy(const Instance& instance,
                              const Allocation& alloc) {
  const SystemParams& p = instance.params;
  double uploads = 0.0;
  for (size_t i = 0; i < instance.tasks.size(); ++i)
    uploads += direct_transmit(instance.tasks[i].upload_bits,
                               instance.channel_gains[i], alloc.upload_s[i], p);
  if (p.bs_weight == 0.0) return uploads;  // server side carries no weight

  double server = 0.0;
  for (size_t i = 0; i < instance.tasks.size(); ++i) {
    server += p.switched_capacitance * instance.tasks[i].workload_cycles *
              p.bs_cpu_hz * p.bs_cpu_hz;
    server += direct_transmit(instance.tasks[i].download_bits,
                              instance.channel_gains[i], alloc.download_s[i],
                              p);
  }
  return uploads + p.bs_weight * server;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

double fd_derivative(const std::function<double(double)>& f, double x,
                     double rel_step) {
  const double h = rel_step * std::max(std::fabs(x), rel_step);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

std::vector<double> simplex_point(int n, double total, SplitMix64& rng) {
  std::vector<double> out(static_cast<size_t>(n));
  double sum = 0.0;
  for (double& v : out) {
    v = rng.next_exponential(1.0);
    sum += v;
  }
  for (double& v : out) v *= total / sum;
  return out;
}

Instance random_instance(int k, double deadline_s, double bs_weight,
                         double bs_cpu_hz, SplitMix64& rng) {
  Instance instance;
  instance.params = SystemParams{deadline_s, bs_cpu_hz, 1e-29,
                                 1e6,        1e-9,      bs_weight};
  instance.tasks.resize(static_cast<size_t>(k));
  instance.channel_gains.resize(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    auto& task = instance.tasks[static_cast<size_t>(i)];
    task.upload_bits = rng.next_uniform(1e5, 5e5);
    task.download_bits = rng.next_uniform(1e5, 5e5);
    task.workload_cycles = rng.next_uniform(5e6, 1.5e7);
    instance.channel_gains[static_cast<size_t>(i)] =
        rng.next_exponential(1e-3);
  }
  return instance;
}

DurationTriple random_triple(int k, SplitMix64& rng, double zero_prob) {
  DurationTriple t;
  t.upload_s.resize(static_cast<size_t>(k));
  t.exec_s.resize(static_cast<size_t>(k));
  t.download_s.resize(static_cast<size_t>(k));
  auto draw = [&]() {
    if (rng.next_unit() < zero_prob) return 0.0;
    return rng.next_uniform(0.01, 1.0);
  };
  for (int i = 0; i < k; ++i) {
    t.upload_s[static_cast<size_t>(i)] = draw();
    t.exec_s[static_cast<size_t>(i)] = draw();
    t.download_s[static_cast<size_t>(i)] = draw();
  }
  return t;
}

double zoom_grid_best_energy(const Instance& instance, const Sequence& seq,
                             int points_per_dim, int rounds,
                             std::vector<double>* final_cell_widths,
                             const std::vector<double>* center,
                             const std::vector<double>* half_width) {
  const int k = instance.size();
  const int dims = 2 * k;
  const double deadline = instance.params.deadline_s;
  const double floor_s = 1e-9;
  const int n = points_per_dim;

  std::vector<double> lo(static_cast<size_t>(dims), floor_s);
  std::vector<double> hi(static_cast<size_t>(dims), deadline);
  if (center != nullptr) {
    for (int d = 0; d < dims; ++d) {
      const size_t ud = static_cast<size_t>(d);
      lo[ud] = std::max(floor_s, (*center)[ud] - (*half_width)[ud]);
      hi[ud] = std::min(deadline, (*center)[ud] + (*half_width)[ud]);
    }
  }
  std::vector<double> best_point(static_cast<size_t>(dims), 0.0);
  double best_energy = kInf;

  Allocation alloc{std::vector<double>(static_cast<size_t>(k)),
                   std::vector<double>(static_cast<size_t>(k))};
  std::vector<int> idx(static_cast<size_t>(dims), 0);
  std::vector<double> point(static_cast<size_t>(dims), 0.0);

  for (int round = 0; round < rounds; ++round) {
    std::fill(idx.begin(), idx.end(), 0);
    bool done = false;
    while (!done) {
      for (int d = 0; d < dims; ++d) {
        const size_t ud = static_cast<size_t>(d);
        point[ud] = lo[ud] + (hi[ud] - lo[ud]) * idx[ud] / (n - 1);
        if (d < k)
          alloc.upload_s[ud] = point[ud];
        else
          alloc.download_s[static_cast<size_t>(d - k)] = point[ud];
      }
      const double span = makespan(seq, duration_triple(instance, alloc));
      if (span <= deadline * (1.0 + 1e-12)) {
        const double energy = direct_weighted_energy(instance, alloc);
        if (energy < best_energy) {
          best_energy = energy;
          best_point = point;
        }
      }
      done = true;
      for (int d = 0; d < dims && done; ++d) {
        const size_t ud = static_cast<size_t>(d);
        if (++idx[ud] < n)
          done = false;
        else
          idx[ud] = 0;
      }
    }
    if (!std::isfinite(best_energy)) break;  // nothing feasible at this size
    for (int d = 0; d < dims; ++d) {
      const size_t ud = static_cast<size_t>(d);
      const double width = (hi[ud] - lo[ud]) * 0.4;
      lo[ud] = std::max(floor_s, best_point[ud] - 0.5 * width);
      hi[ud] = std::min(deadline, lo[ud] + width);
      lo[ud] = std::min(lo[ud], hi[ud] - 1e-15);
    }
  }

  if (final_cell_widths) {
    final_cell_widths->assign(static_cast<size_t>(dims), 0.0);
    for (int d = 0; d < dims; ++d)
      (*final_cell_widths)[static_cast<size_t>(d)] =
          (hi[static_cast<size_t>(d)] - lo[static_cast<size_t>(d)]) / (n - 1);
  }
  return best_energy;
}

}  // namespace mecopt::testing
