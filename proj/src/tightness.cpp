#include "ldp/tightness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ldp/conjugate.hpp"
#include "ldp/csv.hpp"
#include "ldp/errors.hpp"
#include "ldp/estimators.hpp"
#include "ldp/logsumexp.hpp"
#include "ldp/parallel.hpp"
#include "ldp/rng.hpp"
#include "ldp/tilting.hpp"

namespace ldp {

namespace {

// Decay-rate bound for one tail: sup over nonnegative tilts of mu v - A(mu)
// for the upper tail, mirrored for the lower one.  A threshold strictly
// beyond a bounded slope range makes the tail event impossible, hence an
// infinite rate.  With an unbounded slope range the supremum is finite for
// every finite threshold, so an infinite verdict can only be the tilt
// bracket stopping short of the optimum: the far end is pushed out until
// the optimum sits inside and the verdict turns finite.
ExtendedReal side_rate(const FundamentalFunction& A, const DomainInterval& slopes,
                       double v, bool up) {
  double t = up ? v : -v;
  if (up && std::isfinite(slopes.hi) && t > slopes.hi) return ExtendedReal::infinity();
  if (!up && std::isfinite(slopes.lo) && t < slopes.lo) return ExtendedReal::infinity();
  SearchSpec spec;
  spec.divergence_slope = 1e-10;
  if (up) {
    spec.mu_lo = 0.0;
    spec.mu_hi = 60.0;
  } else {
    spec.mu_lo = -60.0;
    spec.mu_hi = 0.0;
  }
  ExtendedReal r = conjugate_point(A, t, spec);
  const DomainInterval& dom = A.domain();
  if (up) {
    while (!r.finite() && !std::isfinite(slopes.hi) && spec.mu_hi < 1e9 &&
           dom.interior_contains(2.0 * spec.mu_hi)) {
      spec.mu_hi *= 2.0;
      r = conjugate_point(A, t, spec);
    }
  } else {
    while (!r.finite() && !std::isfinite(slopes.lo) && spec.mu_lo > -1e9 &&
           dom.interior_contains(2.0 * spec.mu_lo)) {
      spec.mu_lo *= 2.0;
      r = conjugate_point(A, t, spec);
    }
  }
  return r;
}

// Tilted estimate of one tail P(sign * Z(T)/T > v) for the cross-check.
MCEstimate tail_estimate(const StepLaw& law, const FundamentalFunction& A, double v,
                         bool up, double T, long n, std::uint64_t seed, int workers) {
  DomainInterval range = law.slope_range();
  double width = (std::isfinite(range.lo) && std::isfinite(range.hi))
                     ? range.hi - range.lo
                     : 1.0;
  double margin = 1e-3 * std::max(width, 1e-6);
  double target = up ? v : -v;
  if (std::isfinite(range.hi) && target > range.hi - margin) target = range.hi - margin;
  if (std::isfinite(range.lo) && target < range.lo + margin) target = range.lo + margin;

  EstimateMethod method;
  method.kind = EstimateMethod::Kind::Tilted;
  // A zero-width slope range means the step is deterministic; every tilt is
  // the identity there, so sample untilted rather than chase an unreachable
  // slope.
  double mu = width > 0.0 ? tilt_for_target(A, target) : 0.0;
  method.tilts.push_back(mu);
  TiltedLaw tl(law, mu);

  const long long m = static_cast<long long>(std::floor(T + 1e-9));
  std::vector<double> logw(static_cast<std::size_t>(n));
  std::vector<unsigned char> hit(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), workers, [&](std::size_t i) {
    std::mt19937_64 rng = make_stream(seed, i);
    double s = 0.0;
    for (long long q = 0; q < m; ++q) s += tl.sample(rng);
    double z = s / T;
    hit[i] = ((up ? z : -z) > v) ? 1 : 0;
    logw[i] = tl.log_likelihood_ratio(s, m);
  });
  std::vector<double> hit_logw;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (hit[i]) hit_logw.push_back(logw[i]);
  return reduce_hits(hit_logw, n, T, 0.0, method);
}

}  // namespace

TightnessReport exponential_tightness_scan(const ProcessModel& model,
                                           const std::vector<double>& N_targets,
                                           const std::vector<double>& T_grid, long n,
                                           const SampleOptions& opts) {
  auto law = model.per_step_law();
  if (!law)
    throw InvalidParametersError("exponential_tightness_scan: requires a per-step law");
  if (N_targets.empty() || T_grid.empty())
    throw InvalidParametersError("exponential_tightness_scan: empty target or horizon list");
  for (double N : N_targets)
    if (!(N > 0.0))
      throw InvalidParametersError("exponential_tightness_scan: decay targets must be positive");
  for (double T : T_grid)
    if (!(T > 0.0))
      throw InvalidParametersError("exponential_tightness_scan: horizons must be positive");
  if (n < 100)
    throw InvalidParametersError("exponential_tightness_scan: need n >= 100");

  FundamentalFunction A = model.analytic_A();
  DomainInterval slopes = law->slope_range();

  // Threshold grid: out to twice the step bound when the law is bounded,
  // otherwise forty step standard deviations past the mean.
  double base;
  auto bound = law->support_bound();
  if (bound && *bound > 0.0) {
    base = *bound;
  } else {
    double sd = std::sqrt(std::max(law->variance(), 0.0));
    base = std::abs(law->mean()) + 40.0 * std::max(sd, 1e-6);
  }
  const int kProbes = 400;
  const double dv = 2.0 * base / kProbes;

  TightnessReport report;
  report.T_star = *std::max_element(T_grid.begin(), T_grid.end());

  for (std::size_t ni = 0; ni < N_targets.size(); ++ni) {
    double N = N_targets[ni];
    TightnessEntry entry;
    entry.N = N;
    bool found = false;
    for (int k = 1; k <= kProbes; ++k) {
      TightnessProbe probe;
      probe.v = k * dv;
      probe.rate_up = side_rate(A, slopes, probe.v, true);
      probe.rate_down = side_rate(A, slopes, probe.v, false);
      probe.achieved =
          probe.rate_up < probe.rate_down ? probe.rate_up : probe.rate_down;
      probe.pass = !(probe.achieved < ExtendedReal(N - 1e-9));
      entry.probes.push_back(probe);
      if (probe.pass) {
        entry.v = probe.v;
        entry.achieved = probe.achieved;
        found = true;
        break;
      }
    }
    if (!found)
      throw ScanExhaustedError("exponential_tightness_scan: no scanned threshold reaches "
                               "decay rate " +
                               format_double(N));

    MCEstimate up = tail_estimate(*law, A, entry.v, true, report.T_star, n,
                                  derive_seed(opts.seed, 2 * ni), opts.workers);
    MCEstimate down = tail_estimate(*law, A, entry.v, false, report.T_star, n,
                                    derive_seed(opts.seed, 2 * ni + 1), opts.workers);
    entry.mc_n = n;
    if (up.zero_hits && down.zero_hits) {
      entry.mc_zero_hits = true;
      entry.mc_log_rate = ExtendedReal::infinity();
      entry.mc_p_hat = 0.0;
    } else {
      std::vector<double> parts;
      if (!up.zero_hits) parts.push_back(up.log_p);
      if (!down.zero_hits) parts.push_back(down.log_p);
      double log_p = log_sum_exp(parts);
      entry.mc_p_hat = std::exp(log_p);
      entry.mc_log_rate = ExtendedReal(-log_p / report.T_star);
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace ldp
