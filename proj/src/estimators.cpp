#include "ldp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"
#include "ldp/logsumexp.hpp"
#include "ldp/parallel.hpp"
#include "ldp/rng.hpp"
#include "ldp/tilting.hpp"

namespace ldp {

namespace {

constexpr double kTimeNudge = 1e-9;

long long steps_before(double t) {
  return static_cast<long long>(std::floor(t + kTimeNudge));
}

// Interior slope to center the sampler on when the requested target sits on
// the closed edge of the reachable slope range: pulled half a window inside,
// falling back to the range midpoint when the range is narrower than that.
// The choice affects variance only; the reweighted estimate stays unbiased
// for the original window event.
double proxy_target(const DomainInterval& range, double beta, double eps) {
  double t = beta;
  if (std::isfinite(range.hi) && beta >= range.hi) t = range.hi - 0.5 * eps;
  if (std::isfinite(range.lo) && beta <= range.lo) t = range.lo + 0.5 * eps;
  if (!range.interior_contains(t) && std::isfinite(range.lo) && std::isfinite(range.hi))
    t = 0.5 * (range.lo + range.hi);
  return t;
}

// Everything fixed across samples for the segment-increment event.
struct SegmentPlan {
  std::vector<double> bounds;          // 0 = t_0 < ... < t_K = T
  std::vector<double> denoms;          // t_k - t_{k-1}
  std::vector<long long> step_counts;  // walk step counts per segment
  std::vector<double> betas;
  std::vector<TiltedLaw> tilted;       // one per segment under the tilted method
  double T = 0.0;
  double eps = 0.0;
};

SegmentPlan make_plan(const ProcessModel& model, std::vector<double> bounds,
                      std::vector<double> betas, double T,
                      const EpsilonSchedule& eps, EstimateMethod::Kind kind,
                      EstimateMethod& method_out) {
  eps.validate();
  SegmentPlan plan;
  plan.T = T;
  plan.eps = eps(T);
  plan.bounds = std::move(bounds);
  plan.betas = std::move(betas);
  const std::size_t K = plan.bounds.size() - 1;
  plan.denoms.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    plan.denoms[k] = plan.bounds[k + 1] - plan.bounds[k];
    if (!(plan.denoms[k] > 0.0))
      throw InvalidParametersError("segment boundaries must strictly increase");
  }
  if (model.walk()) {
    plan.step_counts.resize(K);
    for (std::size_t k = 0; k < K; ++k)
      plan.step_counts[k] = steps_before(plan.bounds[k + 1]) - steps_before(plan.bounds[k]);
  }
  if (kind == EstimateMethod::Kind::Tilted) {
    auto law = model.per_step_law();
    if (!law)
      throw InvalidParametersError("tilted estimation requires a per-step law");
    FundamentalFunction A = model.analytic_A();
    DomainInterval range = law->slope_range();
    for (double b : plan.betas) {
      if (!range.contains(b))
        throw TargetOutsideDomainError("target " + format_double(b) +
                                       " is outside the reachable slope range");
      double target = b;
      if (!range.interior_contains(b)) {
        target = proxy_target(range, b, plan.eps);
        method_out.boundary_proxy = true;
      }
      double mu = tilt_for_target(A, target);
      method_out.tilts.push_back(mu);
      plan.tilted.emplace_back(*law, mu);
    }
  }
  return plan;
}

// One sample of the segment-increment event.  Fills the sample's log
// likelihood ratio (0 under crude sampling) and reports the hit.
bool draw_segments(const ProcessModel& model, const SegmentPlan& plan,
                   const std::optional<Conditioning>& conditioning,
                   std::mt19937_64& rng, double& log_w) {
  const double T = plan.T;
  // The initial value is drawn for faithful conditioning semantics even
  // though segment increments do not depend on it.
  if (conditioning) {
    double lo = (conditioning->alpha - conditioning->eta) * T;
    double hi = (conditioning->alpha + conditioning->eta) * T;
    (void)(lo + (hi - lo) * uniform01(rng));
  } else {
    (void)model.draw_initial(T, rng);
  }

  const std::size_t K = plan.denoms.size();
  std::vector<double> sums(K, 0.0);  // steps-only increments
  if (const auto* w = model.walk()) {
    for (std::size_t k = 0; k < K; ++k) {
      const StepLaw& law = plan.tilted.empty() ? w->steps : plan.tilted[k].law();
      double s = 0.0;
      for (long long j = 0; j < plan.step_counts[k]; ++j) s += law.sample(rng);
      sums[k] = s;
    }
  } else {
    const auto* r = model.renewal();
    double t = 0.0;
    std::size_t k = 1;
    while (true) {
      double gap = r->interarrival.kind == Interarrival::Kind::Exponential
                       ? -std::log1p(-uniform01(rng)) / r->interarrival.param
                       : r->interarrival.param;
      t += gap;
      if (t > T) break;
      double jump = r->jumps.sample(rng);
      while (k + 1 < plan.bounds.size() && t > plan.bounds[k] + kTimeNudge) ++k;
      sums[k - 1] += jump;
    }
  }

  log_w = 0.0;
  for (std::size_t k = 0; k < plan.tilted.size(); ++k)
    log_w += plan.tilted[k].log_likelihood_ratio(sums[k], plan.step_counts[k]);

  // Noise contributes to the observed increments but not to the change of
  // measure: only the steps are reweighted, which keeps the estimate
  // unbiased for the joint event.
  if (model.noise()) {
    double prev = model.noise_at(plan.bounds[0], rng);
    for (std::size_t k = 0; k < K; ++k) {
      double cur = model.noise_at(plan.bounds[k + 1], rng);
      sums[k] += cur - prev;
      prev = cur;
    }
  }

  for (std::size_t k = 0; k < K; ++k)
    if (!(std::abs(sums[k] / plan.denoms[k] - plan.betas[k]) < plan.eps)) return false;
  return true;
}

MCEstimate run_segments(const ProcessModel& model, const SegmentPlan& plan,
                        long n, EstimateMethod method,
                        const std::optional<Conditioning>& conditioning,
                        const SampleOptions& opts) {
  std::vector<double> logw(static_cast<std::size_t>(n));
  std::vector<unsigned char> hit(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), opts.workers, [&](std::size_t i) {
    std::mt19937_64 rng = make_stream(opts.seed, i);
    double lw = 0.0;
    hit[i] = draw_segments(model, plan, conditioning, rng, lw) ? 1 : 0;
    logw[i] = lw;
  });
  std::vector<double> hit_logw;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (hit[i]) hit_logw.push_back(logw[i]);
  return reduce_hits(hit_logw, n, plan.T, plan.eps, std::move(method));
}

void check_common(double T, long n, const char* who) {
  if (!(T > 0.0))
    throw InvalidParametersError(std::string(who) + ": T must be positive");
  if (n < 100)
    throw InvalidParametersError(std::string(who) + ": need n >= 100");
}

}  // namespace

MCEstimate estimate_local(const ProcessModel& model, double beta, double T,
                          const EpsilonSchedule& eps, long n,
                          EstimateMethod::Kind method,
                          std::optional<Conditioning> conditioning,
                          const SampleOptions& opts) {
  check_common(T, n, "estimate_local");
  EstimateMethod tag;
  tag.kind = method;
  SegmentPlan plan = make_plan(model, {0.0, T}, {beta}, T, eps, method, tag);
  return run_segments(model, plan, n, std::move(tag), conditioning, opts);
}

MCEstimate estimate_fdd(const ProcessModel& model, const Partition& p,
                        const std::vector<double>& betas, double T,
                        const EpsilonSchedule& eps, long n,
                        EstimateMethod::Kind method, const SampleOptions& opts) {
  check_common(T, n, "estimate_fdd");
  if (betas.size() != p.segments())
    throw InvalidParametersError("estimate_fdd: need one target per partition segment");
  std::vector<double> bounds(p.points().size());
  for (std::size_t i = 0; i < bounds.size(); ++i) bounds[i] = p.points()[i] * T;
  bounds.front() = 0.0;
  bounds.back() = T;
  EstimateMethod tag;
  tag.kind = method;
  SegmentPlan plan = make_plan(model, std::move(bounds), betas, T, eps, method, tag);
  return run_segments(model, plan, n, std::move(tag), std::nullopt, opts);
}

MCEstimate estimate_functional(const ProcessModel& model, const CadlagPath& f,
                               double T, const EpsilonSchedule& eps, long n,
                               EstimateMethod::Kind method,
                               const SampleOptions& opts) {
  check_common(T, n, "estimate_functional");
  if (!f.continuous())
    throw InvalidParametersError("estimate_functional: the profile must be piecewise linear");
  const auto* w = model.walk();
  if (!w)
    throw InvalidParametersError("estimate_functional: requires a walk model");
  eps.validate();
  const double eT = eps(T);

  // Segment boundaries: the profile's nodes mapped to horizon time, plus a
  // flat (slope zero) continuation to the horizon end when the last node
  // stops short of it.
  const auto& fs = f.abscissae();
  const auto& fv = f.levels();
  std::vector<double> bounds;
  std::vector<double> slopes;
  bounds.push_back(0.0);
  for (std::size_t j = 1; j < fs.size(); ++j) {
    bounds.push_back(fs[j] * T);
    slopes.push_back((fv[j] - fv[j - 1]) / (fs[j] - fs[j - 1]));
  }
  if (bounds.back() < T - kTimeNudge) {
    bounds.push_back(T);
    slopes.push_back(0.0);
  } else {
    bounds.back() = T;
  }
  const std::size_t S = slopes.size();
  std::vector<long long> counts(S);
  for (std::size_t j = 0; j < S; ++j)
    counts[j] = steps_before(bounds[j + 1]) - steps_before(bounds[j]);

  EstimateMethod tag;
  tag.kind = method;
  std::vector<TiltedLaw> tilted;
  if (method == EstimateMethod::Kind::Tilted) {
    FundamentalFunction A = model.analytic_A();
    DomainInterval range = w->steps.slope_range();
    for (double g : slopes) {
      if (!range.contains(g))
        throw SlopeOutsideDomainError("profile slope " + format_double(g) +
                                      " is outside the reachable slope range");
      double target = g;
      if (!range.interior_contains(g)) {
        target = proxy_target(range, g, eT);
        tag.boundary_proxy = true;
      }
      double mu = tilt_for_target(A, target);
      tag.tilts.push_back(mu);
      tilted.emplace_back(w->steps, mu);
    }
  }

  // Observation grid: every integer time, plus the horizon end when T is
  // fractional (the walk holds its last value there).
  const long long m = steps_before(T);
  std::vector<double> times(static_cast<std::size_t>(m) + 1);
  for (long long u = 0; u <= m; ++u) times[static_cast<std::size_t>(u)] = static_cast<double>(u);
  if (static_cast<double>(m) < T - kTimeNudge) times.push_back(T);

  std::vector<double> logw(static_cast<std::size_t>(n));
  std::vector<unsigned char> hit(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), opts.workers, [&](std::size_t i) {
    std::mt19937_64 rng = make_stream(opts.seed, i);
    double z = model.draw_initial(T, rng);
    std::vector<double> vals;
    vals.reserve(times.size());
    vals.push_back(z);
    double lw = 0.0;
    for (std::size_t j = 0; j < S; ++j) {
      const StepLaw& law = tilted.empty() ? w->steps : tilted[j].law();
      double seg_sum = 0.0;
      for (long long q = 0; q < counts[j]; ++q) {
        double x = law.sample(rng);
        seg_sum += x;
        z += x;
        vals.push_back(z);
      }
      if (!tilted.empty()) lw += tilted[j].log_likelihood_ratio(seg_sum, counts[j]);
    }
    if (vals.size() < times.size()) vals.push_back(z);  // fractional horizon end
    if (model.noise())
      for (std::size_t u = 0; u < times.size(); ++u) vals[u] += model.noise_at(times[u], rng);

    std::vector<std::pair<double, double>> nodes;
    nodes.reserve(times.size());
    for (std::size_t u = 0; u < times.size(); ++u) {
      double s = times[u] / T;
      if (u + 1 == times.size()) s = 1.0;
      nodes.emplace_back(s, vals[u] / T);
    }
    nodes.front().first = 0.0;
    CadlagPath path = CadlagPath::sampled(std::move(nodes));
    hit[i] = uniform_norm_distance(path, f) < eT ? 1 : 0;
    logw[i] = lw;
  });

  std::vector<double> hit_logw;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (hit[i]) hit_logw.push_back(logw[i]);
  return reduce_hits(hit_logw, n, T, eT, std::move(tag));
}

MCEstimate reduce_hits(const std::vector<double>& hit_log_weights, long n,
                       double T, double eps, EstimateMethod method) {
  if (n < 1) throw InvalidParametersError("reduce_hits: n must be positive");
  if (!(T > 0.0)) throw InvalidParametersError("reduce_hits: T must be positive");
  MCEstimate est;
  est.n = n;
  est.T = T;
  est.eps = eps;
  est.method = std::move(method);
  const double log_n = std::log(static_cast<double>(n));

  if (hit_log_weights.empty()) {
    if (est.method.kind == EstimateMethod::Kind::Crude)
      throw ZeroHitsError(n,
                          "crude estimator observed zero hits; switch to the tilted "
                          "method or enlarge n");
    est.zero_hits = true;
    est.p_hat = 0.0;
    est.log_p = -std::numeric_limits<double>::infinity();
    est.log_rate = ExtendedReal::infinity();
    est.rule_of_three = 3.0 / static_cast<double>(n);
    return est;
  }

  double lse1 = log_sum_exp(hit_log_weights);
  std::vector<double> doubled(hit_log_weights);
  for (double& x : doubled) x *= 2.0;
  double lse2 = log_sum_exp(doubled);
  est.log_p = lse1 - log_n;
  est.p_hat = std::exp(est.log_p);
  double log_m2 = lse2 - log_n;
  // Var(p_hat) = (m2 - p^2) / n with m2 the second weight moment; assembled
  // in log scale because both moments underflow at large horizons.  The gap
  // 2 log_p - log_m2 is <= 0 by Cauchy-Schwarz, so the log1p argument stays
  // in [-1, 0].
  double gap = 2.0 * est.log_p - log_m2;
  double log_var_num = log_m2 + std::log1p(-std::min(1.0, std::exp(gap)));
  est.std_err = std::exp(0.5 * (log_var_num - log_n));
  est.log_rate = ExtendedReal(-est.log_p / T);
  return est;
}

}  // namespace ldp
