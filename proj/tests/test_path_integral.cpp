#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "ldp/cadlag_path.hpp"
#include "ldp/deviation_integral.hpp"
#include "ldp/errors.hpp"
#include "ldp/partition.hpp"
#include "ldp/rate_function.hpp"

#include "oracles.hpp"

namespace {

// Random piecewise-linear path whose abscissae sit on the 1/32 grid, so a
// dyadic refinement of level five or more contains every node.
ldp::CadlagPath random_grid_path(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_int_distribution<int> pos(1, 31);
  std::uniform_real_distribution<double> level(-1.0, 1.0);
  std::set<int> ticks;
  int k = count(rng);
  while (static_cast<int>(ticks.size()) < k) ticks.insert(pos(rng));
  std::vector<std::pair<double, double>> nodes{{0.0, level(rng)}};
  for (int t : ticks) nodes.emplace_back(t / 32.0, level(rng));
  return ldp::CadlagPath::piecewise_linear(nodes);
}

}  // namespace

TEST_CASE("partitions refine, merge, and reject degenerate points") {
  ldp::Partition u4 = ldp::Partition::uniform(4);
  CHECK(u4.points() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(u4.weight(1) == doctest::Approx(0.25));

  CHECK(ldp::Partition::dyadic(3).segments() == 8);
  CHECK(ldp::Partition::dyadic(3).refines(ldp::Partition::dyadic(2)));
  CHECK_FALSE(ldp::Partition::uniform(6).refines(u4));

  ldp::Partition merged = ldp::Partition::uniform(2).merged_with({0.3, 0.5 + 1e-15});
  CHECK(merged.points() == std::vector<double>{0.0, 0.3, 0.5, 1.0});
  CHECK(merged.refines(ldp::Partition::uniform(2)));

  CHECK_THROWS_AS(ldp::Partition({0.0, 0.5, 0.5 + 5e-13, 1.0}),
                  ldp::InvalidParametersError);
  CHECK_THROWS_AS(ldp::Partition({0.1, 1.0}), ldp::InvalidParametersError);
}

TEST_CASE("interpolation through a containing partition reproduces the path") {
  ldp::CadlagPath f = ldp::CadlagPath::piecewise_linear(
      {{0.0, 0.0}, {0.25, 0.5}, {0.75, -0.25}, {1.0, 0.1}});
  ldp::Partition p = ldp::Partition::dyadic(3);
  CHECK(ldp::uniform_norm_distance(ldp::interpolate(f, p), f) <= 1e-15);

  // A strictly coarser partition replaces the middle by a chord.
  ldp::Partition coarse({0.0, 0.5, 1.0});
  ldp::CadlagPath g = ldp::interpolate(f, coarse);
  CHECK(g.value(0.25) == doctest::Approx(0.5 * f.value(0.5)));
}

TEST_CASE("interval terms: value and degeneracy") {
  ldp::CadlagPath f = ldp::CadlagPath::piecewise_linear({{0.0, 0.0}, {1.0, 0.5}});
  ldp::RateFunction D = ldp::RateFunction::quadratic(0.0, 1.0);
  // (t - s) * D(slope) with slope 0.5 throughout.
  CHECK(ldp::interval_function(f, D, 0.2, 0.7).value() ==
        doctest::Approx(0.5 * 0.125).epsilon(1e-12));
  CHECK_THROWS_AS(ldp::interval_function(f, D, 0.7, 0.7), ldp::DegenerateIntervalError);
  CHECK_THROWS_AS(ldp::interval_function(f, D, 0.8, 0.2), ldp::DegenerateIntervalError);
}

TEST_CASE("slope-cost integral matches hand-computed values") {
  ldp::CadlagPath f =
      ldp::CadlagPath::piecewise_linear({{0.0, 0.0}, {0.5, 0.25}, {1.0, 0.25}});
  CHECK(ldp::integral_I(f, ldp::RateFunction::quadratic(0.0, 1.0)).value() ==
        doctest::Approx(0.5 * 0.125).epsilon(1e-12));
  CHECK(ldp::integral_I(f, ldp::RateFunction::binary_entropy()).value() ==
        doctest::Approx(0.5 * oracle::rademacher_rate(0.5)).epsilon(1e-12));

  // The implicit flat continuation costs (1 - s_last) * D(0).
  ldp::CadlagPath half = ldp::CadlagPath::piecewise_linear({{0.0, 0.0}, {0.5, 0.25}});
  ldp::RateFunction shifted = ldp::RateFunction::quadratic(0.3, 1.0);
  CHECK(ldp::integral_I(half, shifted).value() ==
        doctest::Approx(0.5 * oracle::gaussian_rate(0.5, 0.3, 1.0) +
                        0.5 * oracle::gaussian_rate(0.0, 0.3, 1.0))
            .epsilon(1e-12));

  CHECK_THROWS_AS(
      ldp::integral_I(ldp::CadlagPath::step({{0.0, 0.0}, {0.5, 1.0}}), shifted),
      ldp::InvalidParametersError);
}

TEST_CASE("refinement traces are monotone and land exactly on the integral") {
  std::mt19937_64 rng(42);
  ldp::RateFunction D = ldp::RateFunction::quadratic(0.0, 1.0);
  ldp::RefinementSchedule sched;
  sched.kind = ldp::RefinementSchedule::Kind::Dyadic;
  sched.max_level = 8;
  sched.tolerance = 1e-12;
  sched.absorb_path_points = false;  // the refinement must discover the nodes

  for (int trial = 0; trial < 50; ++trial) {
    CAPTURE(trial);
    ldp::CadlagPath f = random_grid_path(rng);
    ldp::DeviationIntegralResult res = ldp::deviation_integral_J(f, D, sched);
    REQUIRE(res.trace.size() >= 2);
    CHECK(res.converged);
    CHECK_FALSE(res.diverged);
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
      CHECK(res.trace[i].first > res.trace[i - 1].first);
      CHECK(res.trace[i].second.value() >= res.trace[i - 1].second.value() - 1e-12);
    }
    double exact = ldp::integral_I(f, D).value();
    CHECK(std::abs(res.value.value() - exact) <= 1e-12);
  }
}

TEST_CASE("absorbed path points pin the supremum from the first level") {
  ldp::CadlagPath f = ldp::CadlagPath::piecewise_linear(
      {{0.0, 0.0}, {1.0 / 3.0, 0.4}, {1.0, -0.1}});  // off-grid node
  ldp::RateFunction D = ldp::RateFunction::quadratic(0.0, 1.0);
  ldp::DeviationIntegralResult res = ldp::deviation_integral_J(f, D);
  CHECK(res.converged);
  CHECK(std::abs(res.value.value() - ldp::integral_I(f, D).value()) <= 1e-12);
}

TEST_CASE("a jump against a full-domain rate is driven to divergence") {
  ldp::CadlagPath jump = ldp::CadlagPath::step({{0.0, 0.0}, {0.5, 1.0}});
  ldp::RateFunction D = ldp::RateFunction::quadratic(0.0, 1.0);
  ldp::DeviationIntegralResult res = ldp::deviation_integral_J(jump, D);
  CHECK(res.diverged);
  CHECK(res.value.infinite());
  double peak = 0.0;
  for (const auto& [segs, v] : res.trace)
    if (v.finite()) peak = std::max(peak, v.value());
  CHECK(peak > 1e6);
}

TEST_CASE("a jump against a bounded-domain rate is infinite at once") {
  // The chord across the jump has slope 2 already at the first level, which
  // a rate finite only on [-1, 1] prices at infinity.
  ldp::CadlagPath jump = ldp::CadlagPath::step({{0.0, 0.0}, {0.5, 1.0}});
  ldp::DeviationIntegralResult res =
      ldp::deviation_integral_J(jump, ldp::RateFunction::binary_entropy());
  CHECK(res.diverged);
  CHECK(res.value.infinite());
  CHECK(res.trace.size() == 1);
}

TEST_CASE("an exhausted budget reports no verdict") {
  ldp::CadlagPath jump = ldp::CadlagPath::step({{0.0, 0.0}, {0.5, 1.0}});
  ldp::RateFunction D = ldp::RateFunction::quadratic(0.0, 1.0);
  ldp::RefinementSchedule sched;
  sched.max_level = 6;  // stops while the trace is still climbing
  ldp::DeviationIntegralResult res = ldp::deviation_integral_J(jump, D, sched);
  CHECK_FALSE(res.converged);
  CHECK_FALSE(res.diverged);
  CHECK(res.value.finite());

  sched.max_level = -1;
  CHECK_THROWS_AS(ldp::deviation_integral_J(jump, D, sched),
                  ldp::InvalidParametersError);
}
