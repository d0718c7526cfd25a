#include "mecopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mecopt/closed_form.hpp"
#include "mecopt/errors.hpp"
#include "mecopt/parallel.hpp"
#include "mecopt/rng.hpp"
#include "mecopt/solvers.hpp"

namespace mecopt {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool known_method(const std::string& m) {
  return std::find(kKnownMethods.begin(), kKnownMethods.end(), m) !=
         kKnownMethods.end();
}

void check_range(const std::array<double, 2>& range, const char* name) {
  require(std::isfinite(range[0]) && std::isfinite(range[1]),
          std::string("config: ") + name + " must be finite");
  require(range[0] > 0.0, std::string("config: ") + name + " must be > 0");
  require(range[0] <= range[1],
          std::string("config: ") + name + " must be ordered low <= high");
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Accumulator {
  int n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) {
    ++n;
    sum += v;
    sum_sq += v * v;
  }
  double mean() const { return n > 0 ? sum / n : 0.0; }
  double sample_std() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - n * m * m) / (n - 1));
    return std::sqrt(var);
  }
};

}  // namespace

const std::vector<std::string> kKnownMethods = {
    "optimal",  "suboptimal", "baseline1",
    "baseline2", "baseline1_negligible", "negligible"};

void validate(const ScenarioConfig& config) {
  require(!config.k_range.empty(), "config: K_range must be non-empty");
  for (int k : config.k_range)
    require(k >= 1, "config: K_range entries must be >= 1");
  require(!config.t_range_s.empty(), "config: T_range_s must be non-empty");
  for (double t : config.t_range_s)
    require(std::isfinite(t) && t > 0.0,
            "config: T_range_s entries must be > 0");
  require(config.num_draws >= 1, "config: num_draws must be >= 1");
  check_range(config.upload_bits_range, "upload_bits_range");
  check_range(config.download_bits_range, "download_bits_range");
  check_range(config.workload_cycles_range, "workload_cycles_range");
  require(config.gain_model.type == "rayleigh_power",
          "config: unknown gain model '" + config.gain_model.type + "'");
  require(std::isfinite(config.gain_model.mean) && config.gain_model.mean > 0.0,
          "config: gain model mean must be > 0");
  for (const auto& m : config.methods)
    require(known_method(m), "config: unknown method '" + m + "'");

  SystemParams probe = config.params;
  probe.deadline_s = config.t_range_s.front();
  validate(probe);
}

Instance generate_instance(const ScenarioConfig& config, int k, int draw_index) {
  require(k >= 1, "generate_instance: K must be >= 1");
  require(draw_index >= 0, "generate_instance: draw_index must be >= 0");

  const uint64_t seed = config.seed;
  const auto draw = static_cast<uint64_t>(draw_index);
  Instance instance;
  instance.params = config.params;
  instance.tasks.reserve(static_cast<size_t>(k));
  instance.channel_gains.reserve(static_cast<size_t>(k));
  for (int t = 0; t < k; ++t) {
    const auto task = static_cast<uint64_t>(t);
    SplitMix64 s_upload(mix_key({seed, draw, task, 0}));
    SplitMix64 s_download(mix_key({seed, draw, task, 1}));
    SplitMix64 s_workload(mix_key({seed, draw, task, 2}));
    SplitMix64 s_gain(mix_key({seed, draw, task, 3}));

    TaskSpec spec;
    spec.upload_bits = s_upload.next_uniform(config.upload_bits_range[0],
                                             config.upload_bits_range[1]);
    spec.download_bits = s_download.next_uniform(config.download_bits_range[0],
                                                 config.download_bits_range[1]);
    spec.workload_cycles = s_workload.next_uniform(
        config.workload_cycles_range[0], config.workload_cycles_range[1]);
    instance.tasks.push_back(spec);
    instance.channel_gains.push_back(
        s_gain.next_exponential(config.gain_model.mean));
  }
  return instance;
}

SolveResult run_method(const Instance& instance, const std::string& method,
                       int max_threads) {
  if (method == "optimal") return solve_optimal(instance, max_threads);
  if (method == "suboptimal") return solve_suboptimal(instance);
  if (method == "baseline1")
    return baseline_equal_split(instance, EqualSplitMode::kCountedExec);
  if (method == "baseline1_negligible")
    return baseline_equal_split(instance, EqualSplitMode::kNegligibleExec);
  if (method == "baseline2") return baseline_reduced_horizon(instance);
  if (method == "negligible") return solve_negligible(instance);
  throw std::invalid_argument("unknown method '" + method + "'");
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& config,
                                const std::vector<std::string>& methods,
                                int max_threads, bool measure_walltime) {
  validate(config);
  require(!methods.empty(), "run_sweep: method list must be non-empty");
  for (const auto& m : methods)
    require(known_method(m), "run_sweep: unknown method '" + m + "'");
  if (std::find(methods.begin(), methods.end(), "optimal") != methods.end())
    for (int k : config.k_range)
      require(k <= 6, "run_sweep: optimal requires K <= 6");

  struct Point {
    int k;
    double t;
  };
  std::vector<Point> points;
  for (int k : config.k_range)
    for (double t : config.t_range_s) points.push_back({k, t});

  std::vector<std::vector<SweepRow>> per_point(points.size());
  auto solve_point = [&](size_t idx) {
    const auto [k, deadline] = points[idx];
    std::vector<Instance> instances;
    instances.reserve(static_cast<size_t>(config.num_draws));
    for (int d = 0; d < config.num_draws; ++d) {
      Instance inst = generate_instance(config, k, d);
      inst.params.deadline_s = deadline;
      instances.push_back(std::move(inst));
    }
    for (const auto& method : methods) {
      SweepRow row;
      row.k = k;
      row.t_s = deadline;
      row.method = method;
      Accumulator energy, makespan_acc, walltime;
      int fastpath = 0, feasible = 0;
      for (const auto& inst : instances) {
        try {
          const auto start = std::chrono::steady_clock::now();
          const SolveResult res = run_method(inst, method, 1);
          const auto stop = std::chrono::steady_clock::now();
          ++feasible;
          energy.add(res.energy_j);
          makespan_acc.add(res.makespan_s);
          if (res.diagnostics.fast_path) ++fastpath;
          if (measure_walltime)
            walltime.add(std::chrono::duration<double>(stop - start).count());
        } catch (const InfeasibleError&) {
          ++row.infeasible_count;
        }
      }
      row.mean_energy_j = energy.mean();
      row.std_energy_j = energy.sample_std();
      row.mean_makespan_s = makespan_acc.mean();
      row.fastpath_rate = feasible > 0 ? static_cast<double>(fastpath) / feasible : 0.0;
      row.mean_walltime_s = measure_walltime ? walltime.mean() : 0.0;
      per_point[idx].push_back(std::move(row));
    }
  };

  const int workers = std::min<int>(resolve_thread_count(max_threads),
                                    static_cast<int>(points.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < points.size(); ++i) solve_point(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < points.size();
             i = next.fetch_add(1))
          solve_point(i);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<SweepRow> rows;
  for (auto& chunk : per_point)
    for (auto& row : chunk) rows.push_back(std::move(row));
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     if (a.k != b.k) return a.k < b.k;
                     if (a.t_s != b.t_s) return a.t_s < b.t_s;
                     return a.method < b.method;
                   });
  return rows;
}

std::string emit_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "K,T_s,method,mean_energy_J,std_energy_J,mean_makespan_s,"
      "fastpath_rate,mean_walltime_s\n";
  for (const auto& row : rows) {
    out += std::to_string(row.k);
    out += ',';
    out += format_number(row.t_s);
    out += ',';
    out += row.method;
    out += ',';
    out += format_number(row.mean_energy_j);
    out += ',';
    out += format_number(row.std_energy_j);
    out += ',';
    out += format_number(row.mean_makespan_s);
    out += ',';
    out += format_number(row.fastpath_rate);
    out += ',';
    out += format_number(row.mean_walltime_s);
    out += '\n';
  }
  return out;
}

}  // namespace mecopt
