#include "mecopt/constrained.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mecopt/closed_form.hpp"
#include "mecopt/energy.hpp"
#include "mecopt/errors.hpp"
#include "mecopt/schedule.hpp"

namespace mecopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLowerBox = 1e-12;  // seconds; keeps transmit energies finite
constexpr double kCbrtEps = 6.055454452393343e-06;

std::vector<double> stack(const Allocation& alloc) {
  std::vector<double> y(alloc.upload_s);
  y.insert(y.end(), alloc.download_s.begin(), alloc.download_s.end());
  return y;
}

Allocation unstack(const std::vector<double>& y) {
  const size_t k = y.size() / 2;
  Allocation alloc;
  alloc.upload_s.assign(y.begin(), y.begin() + static_cast<long>(k));
  alloc.download_s.assign(y.begin() + static_cast<long>(k), y.end());
  return alloc;
}

// Transmit part of the weighted energy as a function of the stacked point.
double stacked_energy(const Instance& instance, const std::vector<double>& y) {
  const size_t k = instance.tasks.size();
  const double beta = instance.params.bs_weight;
  double sum = 0.0;
  for (size_t i = 0; i < k; ++i) {
    sum += transmit_energy(instance.tasks[i].upload_bits, y[i],
                           instance.channel_gains[i], instance.params);
    if (beta > 0.0)
      sum += beta * transmit_energy(instance.tasks[i].download_bits, y[k + i],
                                    instance.channel_gains[i], instance.params);
  }
  return sum;
}

void stacked_gradient(const Instance& instance, const Eigen::VectorXd& y,
                      Eigen::VectorXd& grad, Eigen::VectorXd& hess_diag) {
  const size_t k = instance.tasks.size();
  const double beta = instance.params.bs_weight;
  for (size_t i = 0; i < k; ++i) {
    const auto& task = instance.tasks[i];
    const double gain = instance.channel_gains[i];
    const long iu = static_cast<long>(i);
    const long id = static_cast<long>(k + i);
    grad[iu] = transmit_energy_ddt(task.upload_bits, y[iu], gain, instance.params);
    hess_diag[iu] =
        transmit_energy_d2dt2(task.upload_bits, y[iu], gain, instance.params);
    if (beta > 0.0) {
      grad[id] = beta * transmit_energy_ddt(task.download_bits, y[id], gain,
                                            instance.params);
      hess_diag[id] = beta * transmit_energy_d2dt2(task.download_bits, y[id],
                                                   gain, instance.params);
    } else {
      grad[id] = 0.0;
      hess_diag[id] = 0.0;
    }
  }
}

struct BarrierProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  double lo = 0.0;
  double hi = 0.0;

  explicit BarrierProblem(const ConvexProgram& program)
      : A(program.num_rows(), program.num_vars()),
        b(program.num_rows()),
        lo(program.lower_s),
        hi(program.upper_s) {
    for (int r = 0; r < program.num_rows(); ++r) {
      b[r] = program.rhs_s[static_cast<size_t>(r)];
      for (int c = 0; c < program.num_vars(); ++c)
        A(r, c) = program.rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
  }

  bool strictly_feasible(const Eigen::VectorXd& y) const {
    if ((y.array() <= lo).any() || (y.array() >= hi).any()) return false;
    const Eigen::VectorXd s = b - A * y;
    return (s.array() > 0.0).all();
  }

  // Barrier value; +inf outside the strict interior.
  double phi(const Eigen::VectorXd& y) const {
    if (!strictly_feasible(y)) return kInf;
    const Eigen::VectorXd s = b - A * y;
    double v = -s.array().log().sum();
    v -= (y.array() - lo).log().sum();
    v -= (hi - y.array()).log().sum();
    return v;
  }
};

struct CenterStats {
  int newton_steps = 0;
  bool stalled = false;
};

// Damped Newton descent on tau*f + phi until the Newton decrement is tiny.
CenterStats center(const Instance& instance, const BarrierProblem& bp,
                   double tau, Eigen::VectorXd& y) {
  const long n = y.size();
  CenterStats stats;
  Eigen::VectorXd grad_f(n), hess_f(n);
  std::vector<double> y_std(static_cast<size_t>(n));

  auto psi = [&](const Eigen::VectorXd& point) {
    const double barrier = bp.phi(point);
    if (std::isinf(barrier)) return kInf;
    for (long i = 0; i < n; ++i) y_std[static_cast<size_t>(i)] = point[i];
    const double f = stacked_energy(instance, y_std);
    return std::isfinite(f) ? tau * f + barrier : kInf;
  };

  for (int step = 0; step < 120; ++step) {
    stacked_gradient(instance, y, grad_f, hess_f);
    const Eigen::VectorXd s = bp.b - bp.A * y;
    const Eigen::VectorXd inv_s = s.cwiseInverse();
    const Eigen::VectorXd d_lo = (y.array() - bp.lo).matrix().cwiseInverse();
    const Eigen::VectorXd d_hi = (bp.hi - y.array()).matrix().cwiseInverse();

    Eigen::VectorXd g = tau * grad_f + bp.A.transpose() * inv_s - d_lo + d_hi;
    Eigen::MatrixXd h =
        bp.A.transpose() * inv_s.array().square().matrix().asDiagonal() * bp.A;
    h.diagonal() += tau * hess_f + d_lo.array().square().matrix() +
                    d_hi.array().square().matrix();

    Eigen::LLT<Eigen::MatrixXd> llt(h);
    Eigen::VectorXd delta;
    if (llt.info() == Eigen::Success) {
      delta = llt.solve(-g);
    } else {
      h.diagonal().array() += 1e-10 * h.diagonal().maxCoeff();
      delta = h.ldlt().solve(-g);
    }

    const double decrement_sq = -g.dot(delta);
    if (!(decrement_sq > 1e-18)) break;  // centered (or numerically flat)

    ++stats.newton_steps;
    const double psi_now = psi(y);
    const double slope = g.dot(delta);
    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= 1e-18) {
      const Eigen::VectorXd trial = y + alpha * delta;
      if (psi(trial) <= psi_now + 0.25 * alpha * slope) {
        y = trial;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      stats.stalled = true;
      break;
    }
  }
  return stats;
}

Eigen::VectorXd feasible_start(const Instance& instance, const Sequence& seq,
                               const Allocation& warm, double floor_makespan) {
  const double deadline = instance.params.deadline_s;
  const double target = deadline - 1e-3 * (deadline - floor_makespan);
  const std::vector<double> raw = stack(warm);
  const DurationTriple base{warm.upload_s, exec_durations(instance),
                            warm.download_s};

  auto scaled_makespan = [&](double c) {
    DurationTriple t = base;
    for (double& v : t.upload_s) v = std::max(c * v, 2.0 * kLowerBox);
    for (double& v : t.download_s) v = std::max(c * v, 2.0 * kLowerBox);
    return makespan(seq, t);
  };

  // The warm allocation fills the whole deadline with radio time, so its
  // makespan exceeds the target; shrink until we sit just inside it.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (scaled_makespan(mid) < target ? lo : hi) = mid;
  }

  Eigen::VectorXd y(static_cast<long>(raw.size()));
  for (size_t i = 0; i < raw.size(); ++i)
    y[static_cast<long>(i)] = std::max(lo * raw[i], 2.0 * kLowerBox);
  return y;
}

SolveResult solve_with_warm_start(const Instance& instance, const Sequence& seq,
                                  const Allocation& warm) {
  const double deadline = instance.params.deadline_s;
  const size_t k = instance.tasks.size();

  // Even instantaneous transmissions may not fit: the execution chain alone
  // can exceed the deadline.
  DurationTriple minimal{std::vector<double>(k, 2.0 * kLowerBox),
                         exec_durations(instance),
                         std::vector<double>(k, 2.0 * kLowerBox)};
  const double floor_makespan = makespan(seq, minimal);
  if (!(floor_makespan < deadline))
    throw InfeasibleError("execution_chain", floor_makespan, deadline);

  const ConvexProgram program = build_deadline_polytope(instance, seq);
  const BarrierProblem bp(program);
  Eigen::VectorXd y = feasible_start(instance, seq, warm, floor_makespan);
  if (!bp.strictly_feasible(y))
    throw std::runtime_error("interior-point start is not strictly feasible");

  const double constraint_count =
      static_cast<double>(program.num_rows()) + 2.0 * static_cast<double>(y.size());
  std::vector<double> y_std(static_cast<size_t>(y.size()));
  auto f_of = [&](const Eigen::VectorXd& point) {
    for (long i = 0; i < point.size(); ++i)
      y_std[static_cast<size_t>(i)] = point[i];
    return stacked_energy(instance, y_std);
  };

  double tau = constraint_count / (0.1 * (1.0 + f_of(y)));
  int newton_total = 0;
  double gap = kInf;
  for (int outer = 0; outer < 60; ++outer) {
    const CenterStats stats = center(instance, bp, tau, y);
    newton_total += stats.newton_steps;
    const double f_now = f_of(y);
    gap = constraint_count / tau;
    const double gap_target =
        std::min(1e-9 * (1.0 + f_now), 1e-8 * std::max(f_now, 1e-300));
    if (gap <= gap_target || stats.stalled) break;
    tau *= 10.0;
  }

  SolveResult result;
  result.method = "constrained";
  for (long i = 0; i < y.size(); ++i) y_std[static_cast<size_t>(i)] = y[i];
  result.allocation = unstack(y_std);
  result.sequence = seq;
  result.energy = total_weighted_energy(instance, result.allocation);
  result.energy_j = result.energy.total_weighted_j;
  result.makespan_s =
      makespan(seq, duration_triple(instance, result.allocation));
  result.diagnostics.duality_gap = gap;
  result.diagnostics.newton_iterations = newton_total;
  result.diagnostics.convex_solves = 1;
  result.diagnostics.kkt_residual = kkt_residual(instance, seq, result.allocation);
  return result;
}

// Lawson-Hanson nonnegative least squares: min ||A x - b||, x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const long p = A.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
  std::vector<bool> passive(static_cast<size_t>(p), false);
  const double tol = 1e-12 * std::max(1.0, (A.transpose() * b).cwiseAbs().maxCoeff());

  for (long guard = 0; guard < 30 * p + 30; ++guard) {
    const Eigen::VectorXd w = A.transpose() * (b - A * x);
    long best = -1;
    double best_w = tol;
    for (long j = 0; j < p; ++j)
      if (!passive[static_cast<size_t>(j)] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    if (best < 0) break;
    passive[static_cast<size_t>(best)] = true;

    for (long inner = 0; inner < 30 * p + 30; ++inner) {
      std::vector<long> idx;
      for (long j = 0; j < p; ++j)
        if (passive[static_cast<size_t>(j)]) idx.push_back(j);
      Eigen::MatrixXd Ap(A.rows(), static_cast<long>(idx.size()));
      for (size_t c = 0; c < idx.size(); ++c) Ap.col(static_cast<long>(c)) = A.col(idx[c]);
      const Eigen::VectorXd z = Ap.colPivHouseholderQr().solve(b);

      bool all_positive = true;
      double alpha = 1.0;
      for (size_t c = 0; c < idx.size(); ++c)
        if (z[static_cast<long>(c)] <= 0.0) {
          all_positive = false;
          const double xi = x[idx[c]];
          alpha = std::min(alpha, xi / (xi - z[static_cast<long>(c)]));
        }
      if (all_positive) {
        x.setZero();
        for (size_t c = 0; c < idx.size(); ++c) x[idx[c]] = z[static_cast<long>(c)];
        break;
      }
      for (size_t c = 0; c < idx.size(); ++c) {
        const long j = idx[c];
        x[j] += alpha * (z[static_cast<long>(c)] - x[j]);
        if (x[j] <= 1e-14) {
          x[j] = 0.0;
          passive[static_cast<size_t>(j)] = false;
        }
      }
    }
  }
  return x;
}

}  // namespace

ConvexProgram build_deadline_polytope(const Instance& instance,
                                      const Sequence& seq) {
  validate(instance);
  const int k = instance.size();
  if (static_cast<int>(seq.order.size()) != k || !seq.is_permutation())
    throw std::invalid_argument("sequence must be a permutation of the tasks");

  const std::vector<double> exec = exec_durations(instance);
  const double deadline = instance.params.deadline_s;
  const int n = 2 * k;

  ConvexProgram program;
  program.lower_s = kLowerBox;
  program.upper_s = deadline;

  // Window rows: uploads of positions 1..i, executions i..j, downloads j..K.
  for (int i = 1; i <= k; ++i) {
    for (int j = i; j <= k; ++j) {
      std::vector<double> row(static_cast<size_t>(n), 0.0);
      for (int p = 0; p < i; ++p) row[static_cast<size_t>(seq.order[p])] = 1.0;
      for (int p = j - 1; p < k; ++p)
        row[static_cast<size_t>(k + seq.order[p])] = 1.0;
      double exec_window = 0.0;
      for (int p = i - 1; p < j; ++p) exec_window += exec[static_cast<size_t>(seq.order[p])];
      program.rows.push_back(std::move(row));
      program.rhs_s.push_back(deadline - exec_window);
      program.row_labels.push_back("busy_window_" + std::to_string(i) + "_" +
                                   std::to_string(j));
    }
  }

  // All transmissions share one radio, so they must fit in the deadline even
  // without any execution in between.
  program.rows.emplace_back(static_cast<size_t>(n), 1.0);
  program.rhs_s.push_back(deadline);
  program.row_labels.emplace_back("radio_total");
  return program;
}

bool satisfies(const ConvexProgram& program, const std::vector<double>& y,
               double tol_s) {
  if (static_cast<int>(y.size()) != program.num_vars())
    throw std::invalid_argument("point size must match program variables");
  for (double v : y)
    if (v < program.lower_s - tol_s || v > program.upper_s + tol_s) return false;
  for (size_t r = 0; r < program.rows.size(); ++r) {
    double lhs = 0.0;
    for (size_t c = 0; c < y.size(); ++c) lhs += program.rows[r][c] * y[c];
    if (lhs > program.rhs_s[r] + tol_s) return false;
  }
  return true;
}

SolveResult solve_duration_given_sequence(const Instance& instance, const Sequence& seq) {
  validate(instance);
  if (seq.order.size() != instance.tasks.size() || !seq.is_permutation())
    throw std::invalid_argument("sequence must be a permutation of the tasks");
  const SolveResult warm = solve_negligible(instance);
  SolveResult result = solve_with_warm_start(instance, seq, warm.allocation);
  result.diagnostics.closed_form_solves = 1;  // the warm start above
  result.diagnostics.bisect_iterations = warm.diagnostics.bisect_iterations;
  return result;
}

SolveResult solve_duration_given_sequence(const Instance& instance, const Sequence& seq,
                                 const Allocation& warm_start) {
  validate(instance);
  if (seq.order.size() != instance.tasks.size() || !seq.is_permutation())
    throw std::invalid_argument("sequence must be a permutation of the tasks");
  if (warm_start.upload_s.size() != instance.tasks.size() ||
      warm_start.download_s.size() != instance.tasks.size())
    throw std::invalid_argument("warm start size must match instance size");
  return solve_with_warm_start(instance, seq, warm_start);
}

double kkt_residual(const Instance& instance, const Sequence& seq,
                    const Allocation& alloc) {
  validate(instance);
  const size_t k = instance.tasks.size();
  if (alloc.upload_s.size() != k || alloc.download_s.size() != k)
    throw std::invalid_argument("allocation size must match instance size");

  const ConvexProgram program = build_deadline_polytope(instance, seq);
  const std::vector<double> y = stack(alloc);
  const long n = static_cast<long>(y.size());
  const double deadline = instance.params.deadline_s;

  // Central finite differences on the transmit energy; one-sided next to the
  // lower bound where a backward step would go negative.
  Eigen::VectorXd grad(n);
  std::vector<double> probe = y;
  for (long i = 0; i < n; ++i) {
    const size_t ii = static_cast<size_t>(i);
    const double h = kCbrtEps * std::max(std::abs(y[ii]), 1e-6 * deadline);
    if (y[ii] - h > 0.0) {
      probe[ii] = y[ii] + h;
      const double f_plus = stacked_energy(instance, probe);
      probe[ii] = y[ii] - h;
      const double f_minus = stacked_energy(instance, probe);
      grad[i] = (f_plus - f_minus) / (2.0 * h);
    } else {
      const double f_at = stacked_energy(instance, probe);
      probe[ii] = y[ii] + h;
      grad[i] = (stacked_energy(instance, probe) - f_at) / h;
    }
    probe[ii] = y[ii];
  }

  // Collect normals of near-active constraints.
  const double act_tol = 1e-5 * deadline + 1e-12;
  std::vector<Eigen::VectorXd> normals;
  for (size_t r = 0; r < program.rows.size(); ++r) {
    double lhs = 0.0;
    for (size_t c = 0; c < y.size(); ++c) lhs += program.rows[r][c] * y[c];
    if (program.rhs_s[r] - lhs <= act_tol) {
      Eigen::VectorXd a(n);
      for (long c = 0; c < n; ++c) a[c] = program.rows[r][static_cast<size_t>(c)];
      normals.push_back(std::move(a));
    }
  }
  for (long i = 0; i < n; ++i) {
    const size_t ii = static_cast<size_t>(i);
    if (y[ii] - program.lower_s <= act_tol)
      normals.push_back(-Eigen::VectorXd::Unit(n, i));
    if (program.upper_s - y[ii] <= act_tol)
      normals.push_back(Eigen::VectorXd::Unit(n, i));
  }

  // Scale by the gradient magnitude: the raw defect grows with the energy
  // scale of the instance, which spans many decades, while a scaled residual
  // supports a single fixed threshold.
  const double scale = 1.0 + grad.cwiseAbs().maxCoeff();
  if (normals.empty()) return grad.cwiseAbs().maxCoeff() / scale;

  Eigen::MatrixXd N(n, static_cast<long>(normals.size()));
  for (size_t c = 0; c < normals.size(); ++c) N.col(static_cast<long>(c)) = normals[c];
  const Eigen::VectorXd lambda = nnls(N, -grad);
  return (grad + N * lambda).cwiseAbs().maxCoeff() / scale;
}

}  // namespace mecopt
