#include "mecopt/sequencing.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>

#include "mecopt/parallel.hpp"
#include "mecopt/schedule.hpp"

namespace mecopt {
namespace {

int checked_size(const DurationTriple& d) {
  const size_t k = d.upload_s.size();
  if (k == 0) throw std::invalid_argument("duration triple must be non-empty");
  if (d.exec_s.size() != k || d.download_s.size() != k)
    throw std::invalid_argument("duration arrays must have equal sizes");
  for (size_t i = 0; i < k; ++i) {
    if (!(d.upload_s[i] >= 0.0) || !(d.exec_s[i] >= 0.0) ||
        !(d.download_s[i] >= 0.0))
      throw std::invalid_argument("durations must be >= 0");
  }
  return static_cast<int>(k);
}

struct ChunkResult {
  double best;
  std::vector<Sequence> ties;
};

// Evaluate every order with a fixed first task, tail in lexicographic order.
ChunkResult sweep_chunk(int first, const DurationTriple& d,
                        SequenceObjective objective, int k) {
  std::vector<int> tail;
  tail.reserve(static_cast<size_t>(k) - 1);
  for (int t = 0; t < k; ++t)
    if (t != first) tail.push_back(t);

  ChunkResult out{0.0, {}};
  bool have = false;
  Sequence seq;
  seq.order.resize(static_cast<size_t>(k));
  seq.order[0] = first;
  do {
    std::copy(tail.begin(), tail.end(), seq.order.begin() + 1);
    const double value = objective == SequenceObjective::kMakespan
                             ? makespan(seq, d)
                             : makespan_relaxed(seq, d);
    if (!have || value < out.best) {
      have = true;
      out.best = value;
      out.ties.clear();
      out.ties.push_back(seq);
    } else if (value == out.best) {
      out.ties.push_back(seq);
    }
  } while (std::next_permutation(tail.begin(), tail.end()));
  return out;
}

}  // namespace

Sequence johnson_sequence(const DurationTriple& durations) {
  const int k = checked_size(durations);

  std::vector<int> head, rear;
  for (int t = 0; t < k; ++t) {
    const double a = durations.upload_s[t] + durations.exec_s[t];
    const double b = durations.exec_s[t] + durations.download_s[t];
    (a < b ? head : rear).push_back(t);
  }
  std::stable_sort(head.begin(), head.end(), [&](int x, int y) {
    return durations.upload_s[x] + durations.exec_s[x] <
           durations.upload_s[y] + durations.exec_s[y];
  });
  std::stable_sort(rear.begin(), rear.end(), [&](int x, int y) {
    return durations.exec_s[x] + durations.download_s[x] >
           durations.exec_s[y] + durations.download_s[y];
  });

  Sequence seq;
  seq.order = std::move(head);
  seq.order.insert(seq.order.end(), rear.begin(), rear.end());
  return seq;
}

bool johnson_condition_holds(const DurationTriple& durations) {
  checked_size(durations);
  const double min_upload =
      *std::min_element(durations.upload_s.begin(), durations.upload_s.end());
  const double max_exec =
      *std::max_element(durations.exec_s.begin(), durations.exec_s.end());
  return min_upload >= max_exec;
}

BruteForceResult brute_force_sequence(const DurationTriple& durations,
                                      SequenceObjective objective,
                                      int max_threads) {
  const int k = checked_size(durations);
  if (k > 8)
    throw std::invalid_argument(
        "brute_force_sequence supports at most 8 tasks");

  const int threads = std::min(resolve_thread_count(max_threads), k);
  std::vector<ChunkResult> chunks(static_cast<size_t>(k));
  if (threads <= 1 || k == 1) {
    for (int f = 0; f < k; ++f)
      chunks[static_cast<size_t>(f)] = sweep_chunk(f, durations, objective, k);
  } else {
    std::vector<std::future<ChunkResult>> jobs;
    jobs.reserve(static_cast<size_t>(k));
    for (int f = 0; f < k; ++f)
      jobs.push_back(std::async(std::launch::async, sweep_chunk, f,
                                std::cref(durations), objective, k));
    for (int f = 0; f < k; ++f) chunks[static_cast<size_t>(f)] = jobs[f].get();
  }

  // Chunks are ordered by first task, ties within a chunk are already
  // lexicographic, so concatenation keeps the global lexicographic order.
  BruteForceResult result;
  result.makespan_s = chunks[0].best;
  for (const auto& c : chunks) result.makespan_s = std::min(result.makespan_s, c.best);
  for (const auto& c : chunks)
    if (c.best == result.makespan_s)
      result.ties.insert(result.ties.end(), c.ties.begin(), c.ties.end());
  result.best = result.ties.front();
  return result;
}

}  // namespace mecopt
