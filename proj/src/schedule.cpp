#include "mecopt/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mecopt {
namespace {

void check_inputs(const Sequence& seq, const DurationTriple& d) {
  const size_t k = seq.order.size();
  if (k == 0) throw std::invalid_argument("sequence must be non-empty");
  if (!seq.is_permutation())
    throw std::invalid_argument("sequence must be a permutation");
  if (d.upload_s.size() != k || d.exec_s.size() != k || d.download_s.size() != k)
    throw std::invalid_argument("duration arrays must match sequence size");
  for (size_t i = 0; i < k; ++i) {
    if (!(d.upload_s[i] >= 0.0) || !(d.exec_s[i] >= 0.0) ||
        !(d.download_s[i] >= 0.0))
      throw std::invalid_argument("durations must be >= 0");
  }
}

// Longest path through the pipeline: max over window pairs a <= j of
//   uploads of positions 1..a + execs of positions a..j
//   + downloads of positions j..K.
// Each segment is summed in ascending *task* order, not sequence order, so
// two sequences whose critical windows cover the same task sets produce
// bit-identical values. That keeps exhaustive tie sets and rule-vs-search
// comparisons exact instead of drifting by an ulp per prefix reordering.
// O(K^3), which is irrelevant at the K <= 10 this library handles.
double relaxed_window_max(const Sequence& seq, const DurationTriple& d) {
  const int k = static_cast<int>(seq.order.size());
  std::vector<int> pos(static_cast<size_t>(k));
  for (int p = 0; p < k; ++p) pos[static_cast<size_t>(seq.order[p])] = p;

  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < k; ++a) {
    for (int j = a; j < k; ++j) {
      double up = 0.0, ex = 0.0, down = 0.0;
      for (int task = 0; task < k; ++task) {
        const int p = pos[static_cast<size_t>(task)];
        if (p <= a) up += d.upload_s[static_cast<size_t>(task)];
        if (p >= a && p <= j) ex += d.exec_s[static_cast<size_t>(task)];
        if (p >= j) down += d.download_s[static_cast<size_t>(task)];
      }
      best = std::max(best, (up + ex) + down);
    }
  }
  return best;
}

// Sums in task order, independent of the sequence, so that values compared
// across sequences share identical rounding.
double task_order_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

double makespan(const Sequence& seq, const DurationTriple& durations) {
  check_inputs(seq, durations);
  // A single radio adds one more path: all uploads, then all downloads.
  const double radio = task_order_sum(durations.upload_s) +
                       task_order_sum(durations.download_s);
  return std::max(relaxed_window_max(seq, durations), radio);
}

double makespan_relaxed(const Sequence& seq, const DurationTriple& durations) {
  check_inputs(seq, durations);
  return relaxed_window_max(seq, durations);
}

Schedule build_schedule(const Sequence& seq, const DurationTriple& durations,
                        bool allow_transmit_overlap) {
  check_inputs(seq, durations);
  const size_t k = seq.order.size();

  Schedule s;
  s.sequence = seq;
  s.start_upload_s.assign(k, 0.0);
  s.complete_upload_s.assign(k, 0.0);
  s.start_exec_s.assign(k, 0.0);
  s.complete_exec_s.assign(k, 0.0);
  s.start_download_s.assign(k, 0.0);
  s.complete_download_s.assign(k, 0.0);

  double radio_free = 0.0;
  for (int task : seq.order) {
    s.start_upload_s[task] = radio_free;
    s.complete_upload_s[task] = radio_free + durations.upload_s[task];
    radio_free = s.complete_upload_s[task];
  }
  const double last_upload_done = radio_free;

  double cpu_free = 0.0;
  for (int task : seq.order) {
    s.start_exec_s[task] = std::max(s.complete_upload_s[task], cpu_free);
    s.complete_exec_s[task] = s.start_exec_s[task] + durations.exec_s[task];
    cpu_free = s.complete_exec_s[task];
  }

  double down_free = allow_transmit_overlap ? 0.0 : last_upload_done;
  for (int task : seq.order) {
    s.start_download_s[task] = std::max(s.complete_exec_s[task], down_free);
    s.complete_download_s[task] =
        s.start_download_s[task] + durations.download_s[task];
    down_free = s.complete_download_s[task];
  }
  return s;
}

FeasibilityReport check_feasible(const Schedule& schedule,
                                 const DurationTriple& durations,
                                 double deadline_s) {
  const Sequence& seq = schedule.sequence;
  check_inputs(seq, durations);
  const size_t k = seq.order.size();
  if (schedule.start_upload_s.size() != k ||
      schedule.complete_upload_s.size() != k ||
      schedule.start_exec_s.size() != k ||
      schedule.complete_exec_s.size() != k ||
      schedule.start_download_s.size() != k ||
      schedule.complete_download_s.size() != k)
    throw std::invalid_argument("schedule arrays must match sequence size");

  constexpr double kTol = 1e-9;
  FeasibilityReport report;
  auto flag = [&report](const std::string& constraint, int task, double amount) {
    if (amount > kTol) {
      report.feasible = false;
      report.violations.push_back({constraint, task, amount});
    }
  };

  for (size_t i = 0; i < k; ++i) {
    const int t = static_cast<int>(i);
    flag("upload_duration", t,
         std::abs(schedule.complete_upload_s[i] - schedule.start_upload_s[i] -
                  durations.upload_s[i]));
    flag("exec_duration", t,
         std::abs(schedule.complete_exec_s[i] - schedule.start_exec_s[i] -
                  durations.exec_s[i]));
    flag("download_duration", t,
         std::abs(schedule.complete_download_s[i] -
                  schedule.start_download_s[i] - durations.download_s[i]));
    flag("nonnegative_start", t, -schedule.start_upload_s[i]);
    flag("exec_after_upload", t,
         schedule.complete_upload_s[i] - schedule.start_exec_s[i]);
    flag("download_after_exec", t,
         schedule.complete_exec_s[i] - schedule.start_download_s[i]);
    flag("deadline", t, schedule.complete_download_s[i] - deadline_s);
  }

  for (size_t pos = 1; pos < k; ++pos) {
    const int prev = seq.order[pos - 1];
    const int cur = seq.order[pos];
    flag("radio_upload_order", cur,
         schedule.complete_upload_s[prev] - schedule.start_upload_s[cur]);
    flag("cpu_order", cur,
         schedule.complete_exec_s[prev] - schedule.start_exec_s[cur]);
    flag("radio_download_order", cur,
         schedule.complete_download_s[prev] - schedule.start_download_s[cur]);
  }

  // Single radio: no download may begin until every upload is done.
  const int last = seq.order[k - 1];
  for (size_t i = 0; i < k; ++i)
    flag("downloads_after_uploads", static_cast<int>(i),
         schedule.complete_upload_s[last] - schedule.start_download_s[i]);

  return report;
}

}  // namespace mecopt
