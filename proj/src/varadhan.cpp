#include "ldp/varadhan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "ldp/errors.hpp"
#include "ldp/logsumexp.hpp"
#include "ldp/parallel.hpp"
#include "ldp/rng.hpp"
#include "ldp/tilting.hpp"

namespace ldp {

PhiSpec PhiSpec::linear(double slope) {
  PhiSpec p;
  p.kind = Kind::Linear;
  p.slope = slope;
  p.validate();
  return p;
}

PhiSpec PhiSpec::quadratic_capped(double coeff, double cap) {
  PhiSpec p;
  p.kind = Kind::QuadraticCapped;
  p.coeff = coeff;
  p.cap = cap;
  p.validate();
  return p;
}

PhiSpec PhiSpec::piecewise_linear(std::vector<std::pair<double, double>> nodes) {
  PhiSpec p;
  p.kind = Kind::PiecewiseLinear;
  p.nodes = std::move(nodes);
  p.validate();
  return p;
}

void PhiSpec::validate() const {
  switch (kind) {
    case Kind::Linear:
      if (!std::isfinite(slope))
        throw InvalidParametersError("PhiSpec: linear slope must be finite");
      break;
    case Kind::QuadraticCapped:
      if (!std::isfinite(coeff) || !(cap > 0.0) || !std::isfinite(cap))
        throw InvalidParametersError("PhiSpec: need finite coefficient and positive cap");
      break;
    case Kind::PiecewiseLinear:
      if (nodes.empty())
        throw InvalidParametersError("PhiSpec: piecewise-linear needs at least one node");
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i].first) || !std::isfinite(nodes[i].second))
          throw InvalidParametersError("PhiSpec: non-finite node");
        if (i > 0 && !(nodes[i].first > nodes[i - 1].first))
          throw InvalidParametersError("PhiSpec: node abscissae must strictly increase");
      }
      break;
  }
}

double PhiSpec::operator()(double alpha) const {
  switch (kind) {
    case Kind::Linear:
      return slope * alpha;
    case Kind::QuadraticCapped:
      return std::clamp(coeff * alpha * alpha, -cap, cap);
    case Kind::PiecewiseLinear: {
      if (alpha <= nodes.front().first) return nodes.front().second;
      if (alpha >= nodes.back().first) return nodes.back().second;
      auto it = std::upper_bound(
          nodes.begin(), nodes.end(), alpha,
          [](double a, const std::pair<double, double>& nd) { return a < nd.first; });
      auto lo = it - 1;
      double t = (alpha - lo->first) / (it->first - lo->first);
      return lo->second + t * (it->second - lo->second);
    }
  }
  return 0.0;  // unreachable
}

DomainInterval varadhan_window(const StepLaw& law) {
  DomainInterval sr = law.slope_range();
  double sd = std::sqrt(std::max(law.variance(), 0.0));
  double spread = 40.0 * std::max(sd, 1e-6);
  double lo = std::isfinite(sr.lo) ? sr.lo : law.mean() - spread;
  double hi = std::isfinite(sr.hi) ? sr.hi : law.mean() + spread;
  if (!(lo < hi)) {  // degenerate point range keeps a token window
    lo -= 1e-6;
    hi += 1e-6;
  }
  return DomainInterval::closed(lo, hi);
}

VaradhanReference varadhan_reference(const PhiSpec& phi, const RateFunction& D,
                                     const DomainInterval& window, int grid_points) {
  phi.validate();
  if (!(std::isfinite(window.lo) && std::isfinite(window.hi)) || !(window.lo <= window.hi))
    throw InvalidParametersError("varadhan_reference: window must be finite");
  if (grid_points < 1)
    throw InvalidParametersError("varadhan_reference: need at least one grid point");

  bool any = false;
  VaradhanReference ref;
  for (int i = 0; i < grid_points; ++i) {
    double a = grid_points == 1
                   ? 0.5 * (window.lo + window.hi)
                   : window.lo + (window.hi - window.lo) * i / (grid_points - 1);
    ExtendedReal d = D(a);
    if (!d.finite()) continue;
    double v = phi(a) - d.value();
    if (!any || v > ref.value) {
      ref.value = v;
      ref.argmax = a;
      any = true;
    }
  }
  if (!any)
    throw EmptyDomainError("varadhan_reference: rate function infinite across the window");
  return ref;
}

VaradhanEstimate varadhan_functional(const ProcessModel& model, const PhiSpec& phi,
                                     double T, long n, EstimateMethod::Kind method,
                                     const SampleOptions& opts) {
  if (!(T > 0.0)) throw InvalidParametersError("varadhan_functional: T must be positive");
  if (n < 1) throw InvalidParametersError("varadhan_functional: n must be positive");
  phi.validate();

  const auto* w = model.walk();
  double mu_star = 0.0, target = 0.0;
  std::optional<TiltedLaw> tl;
  if (method == EstimateMethod::Kind::Tilted) {
    if (!w)
      throw InvalidParametersError("varadhan_functional: tilted method requires a per-step law");
    FundamentalFunction A = model.analytic_A();
    DomainInterval window = varadhan_window(w->steps);
    RateFunction D = walk_rate_function(A, w->steps.slope_range());
    VaradhanReference ref = varadhan_reference(phi, D, window);
    target = ref.argmax;
    // A peak on the closed edge of the slope range has no finite tilt; step
    // half a grid cell inside.  Any tilt keeps the estimate unbiased.
    DomainInterval range = w->steps.slope_range();
    if (!range.interior_contains(target)) {
      double cell = (window.hi - window.lo) / 2000.0;
      if (std::isfinite(range.hi) && target >= range.hi) target = range.hi - 0.5 * cell;
      if (std::isfinite(range.lo) && target <= range.lo) target = range.lo + 0.5 * cell;
      if (!range.interior_contains(target))
        target = 0.5 * (range.lo + range.hi);
    }
    mu_star = tilt_for_target(A, target);
    tl.emplace(w->steps, mu_star);
  }

  const long long m = static_cast<long long>(std::floor(T + 1e-9));
  std::vector<double> exponents(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), opts.workers, [&](std::size_t i) {
    std::mt19937_64 rng = make_stream(opts.seed, i);
    double z = model.draw_initial(T, rng);
    double lw = 0.0;
    if (w) {
      const StepLaw& law = tl ? tl->law() : w->steps;
      double s = 0.0;
      for (long long q = 0; q < m; ++q) s += law.sample(rng);
      if (tl) lw = tl->log_likelihood_ratio(s, m);
      z += s;
    } else {
      const auto* r = model.renewal();
      double t = 0.0;
      while (true) {
        double gap = r->interarrival.kind == Interarrival::Kind::Exponential
                         ? -std::log1p(-uniform01(rng)) / r->interarrival.param
                         : r->interarrival.param;
        t += gap;
        if (t > T) break;
        z += r->jumps.sample(rng);
      }
    }
    z += model.noise_at(T, rng);
    exponents[i] = T * phi(z / T) + lw;
  });
  for (double e : exponents)
    if (!std::isfinite(e))
      throw OverflowRiskError("varadhan_functional: non-finite exponent");

  double lse = log_sum_exp(exponents);
  double log_mean = lse - std::log(static_cast<double>(n));
  // Delta method on the ln-mean scale, computed on max-shifted terms.
  double shift = *std::max_element(exponents.begin(), exponents.end());
  double s1 = 0.0, s2 = 0.0;
  for (double e : exponents) {
    double x = std::exp(e - shift);
    s1 += x;
    s2 += x * x;
  }
  double mean_x = s1 / static_cast<double>(n);
  double var_x = std::max(0.0, s2 / static_cast<double>(n) - mean_x * mean_x);
  double rel_se = std::sqrt(var_x / static_cast<double>(n)) / mean_x;

  VaradhanEstimate est;
  est.value = log_mean / T;
  est.std_err = rel_se / T;
  est.n = n;
  est.tilt_mu = mu_star;
  est.tilt_target = target;
  est.method = method;
  return est;
}

}  // namespace ldp
