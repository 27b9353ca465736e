#include "ldp/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"

namespace ldp {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/golden ratio
constexpr double kNegHuge = -std::numeric_limits<double>::max();

struct MaxResult {
  double best_x;
  double best_value;
};

// Golden-section maximization of a concave objective on [a, b], with a
// leftmost tie-break (>= keeps the left interval) so flat stretches resolve
// to their left edge.  Endpoint and midpoint candidates are always included.
template <class F>
MaxResult golden_max(F&& g, double a, double b, int iterations) {
  MaxResult best{a, g(a)};
  auto consider = [&](double x) {
    double v = g(x);
    if (v > best.best_value) best = {x, v};
  };
  consider(b);
  consider(0.5 * (a + b));
  double lo = a, hi = b;
  for (int i = 0; i < iterations && hi - lo > 0; ++i) {
    double d = kInvPhi * (hi - lo);
    double x1 = hi - d;
    double x2 = lo + d;
    if (g(x1) >= g(x2))
      hi = x2;
    else
      lo = x1;
  }
  consider(lo);
  consider(0.5 * (lo + hi));
  consider(hi);
  return best;
}

}  // namespace

ExtendedReal conjugate_point(const FundamentalFunction& A, double alpha,
                             const SearchSpec& spec) {
  const DomainInterval& dom = A.domain();
  if (!dom.interior_nonempty())
    throw EmptyDomainError("conjugate_point: domain has empty interior");
  double lo = std::max(spec.mu_lo, dom.bracket_lo());
  double hi = std::min(spec.mu_hi, dom.bracket_hi());
  if (!(lo <= hi))
    throw InvalidParametersError("conjugate_point: bracket does not meet the domain");

  auto g = [&](double mu) {
    ExtendedReal a = A(mu);
    return a.finite() ? alpha * mu - a.value() : kNegHuge;
  };

  MaxResult r = golden_max(g, lo, hi, spec.iterations);
  double best = r.best_value;
  // Exactness anchor: the mu = 0 candidate makes D >= -A(0) hold exactly,
  // so a normalized input (A(0) = 0) yields an exactly nonnegative output.
  if (dom.contains(0.0)) best = std::max(best, g(0.0));

  // Divergence test at an unbounded-domain edge covered by the bracket.
  double h = 1e-4 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  h = std::min(h, 0.25 * (hi - lo));
  if (h > 0) {
    if (!dom.hi_finite() && r.best_x >= hi - 2 * h) {
      double slope = (g(hi) - g(hi - h)) / h;
      if (slope > spec.divergence_slope) return ExtendedReal::infinity();
    }
    if (!dom.lo_finite() && r.best_x <= lo + 2 * h) {
      double slope = (g(lo) - g(lo + h)) / h;
      if (slope > spec.divergence_slope) return ExtendedReal::infinity();
    }
  }
  return ExtendedReal(best);
}

RateFunction legendre_transform(const FundamentalFunction& A,
                                const std::vector<double>& alpha_grid,
                                const SearchSpec& spec) {
  if (alpha_grid.empty())
    throw InvalidParametersError("legendre_transform: empty alpha grid");
  for (std::size_t i = 1; i < alpha_grid.size(); ++i)
    if (!(alpha_grid[i] > alpha_grid[i - 1]))
      throw InvalidParametersError("legendre_transform: alpha grid not increasing");
  const DomainInterval& dom = A.domain();
  if (!dom.interior_nonempty())
    throw EmptyDomainError("legendre_transform: domain of '" + A.label() +
                           "' has empty interior");

  // Convexity spot check on probe triples across the working bracket.
  double lo = std::max(spec.mu_lo, dom.bracket_lo());
  double hi = std::min(spec.mu_hi, dom.bracket_hi());
  if (!(lo < hi))
    throw InvalidParametersError("legendre_transform: bracket does not meet the domain");
  for (int k = 1; k <= 7; ++k) {
    double c = lo + (hi - lo) * k / 8.0;
    double step = (hi - lo) / 16.0;
    double l = c - step, r = c + step;
    ExtendedReal al = A(l), ac = A(c), ar = A(r);
    if (!al.finite() || !ac.finite() || !ar.finite()) continue;
    double scale = 1.0 + std::abs(al.value()) + std::abs(ar.value());
    if (ac.value() > 0.5 * (al.value() + ar.value()) + 1e-9 * scale)
      throw NonConvexInputError("legendre_transform: midpoint convexity fails near mu=" +
                                format_double(c));
  }

  std::vector<ExtendedReal> values;
  values.reserve(alpha_grid.size());
  for (double a : alpha_grid) values.push_back(conjugate_point(A, a, spec));

  std::optional<double> zero;
  if (dom.interior_contains(0.0)) zero = A.derivative(0.0);
  return RateFunction::from_grid("conj_" + A.label(), alpha_grid, std::move(values), zero);
}

ExtendedReal conjugate_of_rate_point(const RateFunction& D, double mu,
                                     const SearchSpec& spec) {
  if (D.grid_backed()) {
    // Piecewise-linear D: the supremum over each chord is attained at a node.
    const auto& as = D.grid_alphas();
    const auto& vs = D.grid_values();
    double best = kNegHuge;
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (!vs[i].finite()) continue;
      double v = mu * as[i] - vs[i].value();
      if (v > best) best = v;
    }
    if (best == kNegHuge)
      throw InvalidParametersError("conjugate_of_rate_point: no finite grid node");
    return ExtendedReal(best);
  }

  const DomainInterval& dom = D.domain();
  auto h = [&](double a) {
    ExtendedReal v = D(a);
    return v.finite() ? mu * a - v.value() : kNegHuge;
  };
  // Establish a bracket: a bounded domain gives one directly; an unbounded
  // side is expanded geometrically until the objective turns over (or is
  // declared divergent at the expansion limit).
  double center = D.zero_point().value_or(
      dom.lo_finite() && dom.hi_finite() ? 0.5 * (dom.lo + dom.hi) : 0.0);
  if (!dom.interior_contains(center)) center = 0.5 * (dom.bracket_lo() + dom.bracket_hi());
  double lo = dom.lo_finite() ? dom.bracket_lo() : center - 1.0;
  double hi = dom.hi_finite() ? dom.bracket_hi() : center + 1.0;
  for (int round = 0; round < 60; ++round) {
    bool grew = false;
    if (!dom.lo_finite() && h(lo) >= h(lo + 0.25 * (hi - lo))) {
      lo = center - 2.0 * (center - lo);
      grew = true;
    }
    if (!dom.hi_finite() && h(hi) >= h(hi - 0.25 * (hi - lo))) {
      hi = center + 2.0 * (hi - center);
      grew = true;
    }
    if (!grew) break;
    if (round == 59) {
      // Still climbing at a far edge of an unbounded domain.
      double step = 1e-4 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
      if (!dom.hi_finite() && (h(hi) - h(hi - step)) / step > spec.divergence_slope)
        return ExtendedReal::infinity();
      if (!dom.lo_finite() && (h(lo) - h(lo + step)) / step > spec.divergence_slope)
        return ExtendedReal::infinity();
    }
  }
  MaxResult r = golden_max(h, lo, hi, spec.iterations);
  return ExtendedReal(r.best_value);
}

FundamentalFunction biconjugate(const RateFunction& D, const std::vector<double>& mu_grid,
                                const SearchSpec& spec) {
  if (mu_grid.size() < 2)
    throw InvalidParametersError("biconjugate: need at least 2 grid points");
  for (std::size_t i = 1; i < mu_grid.size(); ++i)
    if (!(mu_grid[i] > mu_grid[i - 1]))
      throw InvalidParametersError("biconjugate: mu grid not increasing");

  std::vector<ExtendedReal> vals;
  vals.reserve(mu_grid.size());
  for (double mu : mu_grid) vals.push_back(conjugate_of_rate_point(D, mu, spec));

  // Keep the contiguous finite range; convexity forbids interior infinities.
  std::size_t first = mu_grid.size(), last = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i].finite()) {
      if (first == mu_grid.size()) first = i;
      last = i;
    }
  }
  if (first == mu_grid.size())
    throw InvalidParametersError("biconjugate: infinite on the whole mu grid");
  for (std::size_t i = first; i <= last; ++i)
    if (!vals[i].finite())
      throw InvalidParametersError("biconjugate: infinite value inside finite range");

  std::vector<std::pair<double, double>> pts;
  pts.reserve(last - first + 1);
  for (std::size_t i = first; i <= last; ++i) pts.emplace_back(mu_grid[i], vals[i].value());
  if (pts.size() < 2)
    throw InvalidParametersError("biconjugate: finite on fewer than 2 grid points");
  return FundamentalFunction::table(std::move(pts));
}

}  // namespace ldp
