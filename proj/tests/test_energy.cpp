#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "mecopt/energy.hpp"
#include "mecopt/rng.hpp"
#include "oracles.hpp"

using namespace mecopt;

namespace {

SystemParams demo_params() { return {0.08, 6e9, 1e-29, 1e6, 1e-9, 0.1}; }

Instance demo_instance() {
  Instance instance;
  instance.tasks = {{3e5, 6e7, 2e5}, {1e5, 9e7, 4e5}};
  instance.channel_gains = {2e-3, 5e-4};
  instance.params = demo_params();
  return instance;
}

}  // namespace

TEST_CASE("transmit energy matches a hand computation") {
  const auto params = demo_params();
  // 1e5 bits in 0.05 s -> 2 bits/s/Hz -> power = n0/g * (2^2 - 1) = 3e-6 W.
  CHECK(required_power(1e5, 0.05, 1e-3, params) ==
        doctest::Approx(3e-6).epsilon(1e-14));
  CHECK(transmit_energy(1e5, 0.05, 1e-3, params) ==
        doctest::Approx(1.5e-7).epsilon(1e-14));
}

TEST_CASE("zero-duration transmissions are infinite, zero-bit ones free") {
  const auto params = demo_params();
  CHECK(std::isinf(transmit_energy(1e5, 0.0, 1e-3, params)));
  CHECK(transmit_energy(0.0, 0.0, 1e-3, params) == 0.0);
  CHECK(transmit_energy(0.0, 0.5, 1e-3, params) == 0.0);
}

TEST_CASE("transmit energy is strictly decreasing and convex in duration") {
  const auto params = demo_params();
  SplitMix64 rng(2024001);
  for (int trial = 0; trial < 200; ++trial) {
    const double bits = rng.next_uniform(1e4, 5e5);
    const double gain = rng.next_exponential(1e-3);
    const double t = rng.next_uniform(1e-3, 0.2);
    const double step = t * 0.25;
    const double left = transmit_energy(bits, t - step, gain, params);
    const double mid = transmit_energy(bits, t, gain, params);
    const double right = transmit_energy(bits, t + step, gain, params);
    CAPTURE(bits);
    CAPTURE(gain);
    CAPTURE(t);
    CHECK(left > mid);
    CHECK(mid > right);
    // Midpoint convexity on an equally spaced stencil.
    CHECK(left + right >= 2.0 * mid);
  }
}

TEST_CASE("analytic derivatives agree with central differences") {
  const auto params = demo_params();
  SplitMix64 rng(2024002);
  for (int trial = 0; trial < 100; ++trial) {
    const double bits = rng.next_uniform(5e4, 5e5);
    const double gain = rng.next_exponential(1e-3);
    const double t = rng.next_uniform(5e-3, 0.15);
    const auto energy_of = [&](double tau) {
      return transmit_energy(bits, tau, gain, params);
    };
    const double d1 = transmit_energy_ddt(bits, t, gain, params);
    const double d2 = transmit_energy_d2dt2(bits, t, gain, params);
    const double fd1 = testing::fd_derivative(energy_of, t, 1e-6);
    const auto slope_of = [&](double tau) {
      return transmit_energy_ddt(bits, tau, gain, params);
    };
    const double fd2 = testing::fd_derivative(slope_of, t, 1e-6);
    CAPTURE(bits);
    CAPTURE(gain);
    CAPTURE(t);
    CHECK(d1 == doctest::Approx(fd1).epsilon(1e-7));
    CHECK(d2 == doctest::Approx(fd2).epsilon(1e-7));
    CHECK(d1 < 0.0);  // decreasing
    CHECK(d2 > 0.0);  // convex
  }
}

TEST_CASE("exec energy is allocation independent") {
  const auto instance = demo_instance();
  // mu * N * F^2 for the first task.
  CHECK(exec_energy(instance.tasks[0], instance.params) ==
        doctest::Approx(1e-29 * 6e7 * 36e18).epsilon(1e-14));
}

TEST_CASE("weighted total assembles upload + weight * (exec + download)") {
  const auto instance = demo_instance();
  const Allocation alloc{{0.02, 0.01}, {0.015, 0.02}};

  const auto breakdown = total_weighted_energy(instance, alloc);
  REQUIRE(breakdown.upload_j.size() == 2);

  double expect = 0.0;
  for (size_t i = 0; i < 2; ++i) {
    expect += breakdown.upload_j[i];
    expect += instance.params.bs_weight *
              (breakdown.exec_j[i] + breakdown.download_j[i]);
  }
  CHECK(breakdown.total_weighted_j ==
        doctest::Approx(expect).epsilon(1e-14));

  // Against the independent pow()-based evaluation.
  CHECK(breakdown.total_weighted_j ==
        doctest::Approx(testing::direct_weighted_energy(instance, alloc))
            .epsilon(1e-12));
}

TEST_CASE("zero weight drops the server side even when downloads are infinite") {
  auto instance = demo_instance();
  instance.params.bs_weight = 0.0;
  const Allocation alloc{{0.02, 0.01}, {0.0, 0.0}};  // no download time at all

  const auto breakdown = total_weighted_energy(instance, alloc);
  CHECK(std::isinf(breakdown.download_j[0]));
  CHECK(std::isfinite(breakdown.total_weighted_j));
  CHECK(breakdown.total_weighted_j ==
        doctest::Approx(breakdown.upload_j[0] + breakdown.upload_j[1])
            .epsilon(1e-14));
}

TEST_CASE("variable energy excludes the CPU term and propagates infinities") {
  const auto instance = demo_instance();
  const Allocation alloc{{0.02, 0.01}, {0.015, 0.02}};
  const auto breakdown = total_weighted_energy(instance, alloc);

  double exec_sum = 0.0;
  for (double e : breakdown.exec_j) exec_sum += e;
  CHECK(variable_energy(instance, alloc) ==
        doctest::Approx(breakdown.total_weighted_j -
                        instance.params.bs_weight * exec_sum)
            .epsilon(1e-12));

  const Allocation choked{{0.0, 0.01}, {0.015, 0.02}};
  CHECK(std::isinf(variable_energy(instance, choked)));
}

TEST_CASE("random allocations agree with the direct evaluation") {
  SplitMix64 rng(2024003);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_uniform(0.0, 4.0));
    const double weight = rng.next_unit();
    auto instance = testing::random_instance(k, 0.08, weight, 6e9, rng);
    Allocation alloc;
    alloc.upload_s = testing::simplex_point(k, 0.04, rng);
    alloc.download_s = testing::simplex_point(k, 0.04, rng);
    const auto breakdown = total_weighted_energy(instance, alloc);
    const double direct = testing::direct_weighted_energy(instance, alloc);
    if (std::isinf(direct)) {
      // Spacings can starve a slot enough to overflow; both evaluations must
      // overflow together.
      CHECK(breakdown.total_weighted_j == direct);
    } else {
      CHECK(breakdown.total_weighted_j ==
            doctest::Approx(direct).epsilon(1e-11));
    }
  }
}
