#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "ldp/conjugate.hpp"
#include "ldp/domain.hpp"
#include "ldp/errors.hpp"
#include "ldp/fundamental_function.hpp"
#include "ldp/rate_function.hpp"
#include "ldp/smoothness.hpp"

#include "oracles.hpp"

namespace {

std::vector<double> even_grid(double lo, double hi, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

}  // namespace

TEST_CASE("numeric conjugate matches the closed forms") {
  struct Family {
    ldp::FundamentalFunction A;
    std::function<double(double)> D;
    double lo, hi;
  };
  std::vector<Family> families;
  families.push_back({ldp::FundamentalFunction::gaussian(0.3, 1.2),
                      [](double a) { return oracle::gaussian_rate(a, 0.3, 1.2); },
                      0.3 - 3.6, 0.3 + 3.6});
  families.push_back({ldp::FundamentalFunction::rademacher(),
                      [](double a) { return oracle::rademacher_rate(a); }, -0.95,
                      0.95});
  families.push_back({ldp::FundamentalFunction::exponential(2.0),
                      [](double a) { return oracle::exponential_step_rate(a, 2.0); },
                      0.06, 3.0});

  for (const auto& fam : families) {
    CAPTURE(fam.A.label());
    std::vector<double> grid = even_grid(fam.lo, fam.hi, 201);
    ldp::RateFunction D = ldp::legendre_transform(fam.A, grid);
    double worst = 0.0;
    for (double a : grid) {
      ldp::ExtendedReal v = D(a);
      REQUIRE(v.finite());
      worst = std::max(worst, std::abs(v.value() - fam.D(a)));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("single-point conjugation agrees with a dense grid search") {
  ldp::FundamentalFunction gauss = ldp::FundamentalFunction::gaussian(0.3, 1.2);
  for (double a : {-1.0, 0.7, 2.5}) {
    double brute = oracle::grid_conjugate(
        [&](double mu) { return gauss(mu).value(); }, a, -30.0, 30.0);
    CHECK(std::abs(ldp::conjugate_point(gauss, a).value() - brute) <= 1e-6);
  }
  ldp::FundamentalFunction rad = ldp::FundamentalFunction::rademacher();
  for (double a : {-0.8, 0.0, 0.8}) {
    double brute = oracle::grid_conjugate(
        [&](double mu) { return rad(mu).value(); }, a, -30.0, 30.0);
    CHECK(std::abs(ldp::conjugate_point(rad, a).value() - brute) <= 1e-6);
  }
}

TEST_CASE("conjugation output is a convex nonnegative function vanishing at the mean") {
  ldp::FundamentalFunction A = ldp::FundamentalFunction::gaussian(0.3, 1.2);
  std::vector<double> grid = even_grid(-3.0, 3.6, 301);
  ldp::RateFunction D = ldp::legendre_transform(A, grid);

  REQUIRE(D.zero_point().has_value());
  CHECK(*D.zero_point() == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(D(*D.zero_point()).value() <= 1e-10);

  const auto& vals = D.grid_values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    REQUIRE(vals[i].finite());
    CHECK(vals[i].value() >= -1e-12);
  }
  for (std::size_t i = 1; i + 1 < vals.size(); ++i) {
    double bend = vals[i - 1].value() + vals[i + 1].value() - 2.0 * vals[i].value();
    CHECK(bend >= -1e-9);
  }
}

TEST_CASE("the conjugate pair satisfies the Young inequality with equality at matched slopes") {
  ldp::FundamentalFunction A = ldp::FundamentalFunction::rademacher();
  for (double mu : {-1.5, -0.4, 0.0, 0.7, 2.0}) {
    for (double a : {-0.9, -0.3, 0.2, 0.6}) {
      double slack = A(mu).value() + oracle::rademacher_rate(a) - mu * a;
      CHECK(slack >= -1e-12);
    }
    double matched = std::tanh(mu);  // the slope mu exposes
    double slack = A(mu).value() + oracle::rademacher_rate(matched) - mu * matched;
    CHECK(std::abs(slack) <= 1e-9);
  }
}

TEST_CASE("conjugating twice returns the original function") {
  struct Case {
    ldp::FundamentalFunction A;
    std::vector<double> alpha_grid;
    std::vector<double> mu_probes;
  };
  std::vector<Case> cases;
  cases.push_back({ldp::FundamentalFunction::rademacher(),
                   even_grid(-0.999, 0.999, 2001),
                   {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0}});
  cases.push_back({ldp::FundamentalFunction::gaussian(0.3, 1.2),
                   even_grid(0.3 - 6.0, 0.3 + 6.0, 2001),
                   {-2.0, -1.0, 0.0, 0.8, 2.0}});
  cases.push_back({ldp::FundamentalFunction::poisson(1.0), even_grid(1e-4, 8.0, 4001),
                   {-1.0, -0.5, 0.0, 0.5, 1.0}});
  cases.push_back({ldp::FundamentalFunction::exponential(1.0),
                   even_grid(0.2, 8.0, 4001),
                   {-2.0, -1.0, 0.0, 0.5, 0.8}});

  for (const auto& c : cases) {
    CAPTURE(c.A.label());
    ldp::RateFunction D = ldp::legendre_transform(c.A, c.alpha_grid);
    ldp::FundamentalFunction back = ldp::biconjugate(D, c.mu_probes);
    double worst = 0.0;
    for (double mu : c.mu_probes)
      worst = std::max(worst, std::abs(back(mu).value() - c.A(mu).value()));
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("unreachable slopes conjugate to infinity") {
  // A Poisson walk only drifts upward in the mean; negative slopes cost
  // infinitely much, which the maximizer reports as divergence.
  ldp::FundamentalFunction A = ldp::FundamentalFunction::poisson(1.0);
  CHECK(ldp::conjugate_point(A, -0.5).infinite());
  CHECK(ldp::conjugate_point(A, 0.5).finite());
}

TEST_CASE("non-convex and degenerate inputs are rejected") {
  auto tent = ldp::FundamentalFunction::table({{-1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}});
  CHECK_THROWS_AS(ldp::legendre_transform(tent, even_grid(-0.5, 0.5, 11)),
                  ldp::NonConvexInputError);

  ldp::FundamentalFunction point("point", ldp::DomainInterval::point(0.0),
                                 [](double) { return 0.0; });
  CHECK_THROWS_AS(ldp::legendre_transform(point, even_grid(-0.5, 0.5, 11)),
                  ldp::EmptyDomainError);
}

TEST_CASE("smooth families pass the regularity certificate") {
  for (auto A : {ldp::FundamentalFunction::rademacher(),
                 ldp::FundamentalFunction::gaussian(0.0, 1.0),
                 ldp::FundamentalFunction::exponential(1.0)}) {
    CAPTURE(A.label());
    ldp::SmoothnessReport rep =
        ldp::check_essential_smoothness(A, ldp::default_smoothness_probes(A));
    CHECK(rep.nonempty_interior);
    CHECK(rep.differentiable);
    CHECK(rep.steep);
    CHECK(rep.essentially_smooth);
  }
}

TEST_CASE("a flat finite edge fails steepness") {
  // Tabulating a gaussian on a closed interval keeps the derivative finite
  // at the edges, so the boundary evidence cannot keep doubling.
  std::vector<std::pair<double, double>> pts;
  for (double mu : even_grid(-2.0, 2.0, 401)) pts.emplace_back(mu, 0.5 * mu * mu);
  auto A = ldp::FundamentalFunction::table(pts);
  ldp::SmoothnessReport rep =
      ldp::check_essential_smoothness(A, ldp::default_smoothness_probes(A));
  CHECK(rep.nonempty_interior);
  CHECK_FALSE(rep.steep);
  CHECK_FALSE(rep.essentially_smooth);
  REQUIRE(rep.boundaries.size() == 2);
  CHECK_FALSE(rep.boundaries[0].steep);
  CHECK_FALSE(rep.boundaries[1].steep);
}

TEST_CASE("a probe straddling a kink fails differentiability") {
  auto A = ldp::FundamentalFunction::table({{-1.0, 1.3}, {0.3, 0.0}, {1.3, 1.0}});
  ldp::SmoothnessProbeSpec probes;
  probes.interior_points = {0.3 + 4e-5};  // inside the finite-difference step
  ldp::SmoothnessReport rep = ldp::check_essential_smoothness(A, probes);
  CHECK_FALSE(rep.differentiable);
  CHECK_FALSE(rep.essentially_smooth);
  REQUIRE(rep.fd_defects.size() == 1);
  CHECK(rep.fd_defects[0] > 1e-3);
}

TEST_CASE("sublevel sets of the bundled rates are bounded intervals") {
  ldp::RateFunction quad = ldp::RateFunction::quadratic(1.0, 2.0);
  ldp::GoodnessReport rep = ldp::check_goodness(quad, {0.125, 0.5, 2.0});
  CHECK(rep.all_bounded);
  REQUIRE(rep.levels.size() == 3);
  // (a-1)^2 / 8 <= L has the explicit solution |a-1| <= sqrt(8 L).
  for (std::size_t i = 0; i < 3; ++i) {
    double L = rep.levels[i].level;
    CHECK(rep.levels[i].bounded);
    CHECK(rep.levels[i].lo == doctest::Approx(1.0 - std::sqrt(8.0 * L)).epsilon(1e-6));
    CHECK(rep.levels[i].hi == doctest::Approx(1.0 + std::sqrt(8.0 * L)).epsilon(1e-6));
  }

  ldp::RateFunction ent = ldp::RateFunction::binary_entropy();
  ldp::GoodnessReport rep2 = ldp::check_goodness(ent, {0.1, 5.0});
  CHECK(rep2.all_bounded);
  CHECK(rep2.levels[0].hi == doctest::Approx(-rep2.levels[0].lo).epsilon(1e-9));
  CHECK(ent(rep2.levels[0].hi).value() <= 0.1 + 1e-9);
  // Above ln 2 the whole closed domain qualifies.
  CHECK(rep2.levels[1].lo == doctest::Approx(-1.0));
  CHECK(rep2.levels[1].hi == doctest::Approx(1.0));
}

TEST_CASE("a rate with no growth is flagged as not good") {
  ldp::RateFunction flat = ldp::RateFunction::closed_form(
      "flat", ldp::DomainInterval::all(), [](double) { return 0.0; }, 0.0);
  ldp::GoodnessReport rep = ldp::check_goodness(flat, {1.0});
  CHECK_FALSE(rep.all_bounded);
  CHECK_FALSE(rep.levels[0].bounded);
  CHECK_THROWS_AS(ldp::check_goodness(flat, {-1.0}), ldp::InvalidParametersError);
}
