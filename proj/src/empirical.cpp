#include "ldp/empirical.hpp"

#include <algorithm>
#include <cmath>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"
#include "ldp/logsumexp.hpp"
#include "ldp/parallel.hpp"
#include "ldp/rng.hpp"

namespace ldp {

namespace {

// Terminal value Z(T) for one sample stream; draws only what it needs.
double terminal_value(const ProcessModel& model, double T, std::mt19937_64& rng,
                      const std::optional<Conditioning>& conditioning) {
  double z;
  if (conditioning) {
    double lo = (conditioning->alpha - conditioning->eta) * T;
    double hi = (conditioning->alpha + conditioning->eta) * T;
    z = lo + (hi - lo) * uniform01(rng);
  } else {
    z = model.draw_initial(T, rng);
  }
  if (const auto* w = model.walk()) {
    auto steps = static_cast<long long>(std::floor(T + 1e-9));
    for (long long j = 0; j < steps; ++j) z += w->steps.sample(rng);
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
  return z;
}

}  // namespace

CgfEstimate empirical_cgf(const ProcessModel& model, double mu, double T, long n,
                          std::optional<Conditioning> conditioning,
                          const SampleOptions& opts) {
  if (!(T > 0.0) || n < 1)
    throw InvalidParametersError("empirical_cgf: need T > 0 and n >= 1");
  double recenter = conditioning ? conditioning->alpha * T : 0.0;
  std::vector<double> exponents(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), opts.workers, [&](std::size_t i) {
    std::mt19937_64 rng = make_stream(opts.seed, i);
    double z = terminal_value(model, T, rng, conditioning);
    exponents[i] = mu * (z - recenter);
  });
  for (double e : exponents)
    if (!std::isfinite(e))
      throw OverflowRiskError("empirical_cgf: non-finite exponent; mu too large for Z scale");

  double lse = log_sum_exp(exponents);
  double log_mean = lse - std::log(static_cast<double>(n));
  // Delta method on ln mean: sd(X)/ (mean(X) sqrt(n)) with X = exp(shifted).
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

  CgfEstimate est;
  est.value = log_mean / T;
  est.std_err = rel_se / T;
  est.n = n;
  return est;
}

ConditionAReport check_condition_A(const ProcessModel& model,
                                   const std::vector<double>& mu_grid,
                                   const std::vector<double>& T_grid, long n,
                                   std::optional<Conditioning> conditioning,
                                   double slack, const SampleOptions& opts) {
  FundamentalFunction A = model.analytic_A();
  ConditionAReport rep;
  rep.all_pass = true;
  std::uint64_t cell = 0;
  for (double T : T_grid) {
    for (double mu : mu_grid) {
      ExtendedReal a = A(mu);
      if (!a.finite())
        throw ProbeOutsideDomainError("check_condition_A: mu=" + format_double(mu) +
                                      " outside the analytic domain");
      SampleOptions cell_opts = opts;
      cell_opts.seed = derive_seed(opts.seed, cell++);
      CgfEstimate est = empirical_cgf(model, mu, T, n, conditioning, cell_opts);
      ConditionAEntry e;
      e.mu = mu;
      e.T = T;
      e.empirical = est.value;
      e.analytic = a.value();
      e.std_err = est.std_err;
      double band_width = conditioning ? std::abs(mu) * conditioning->eta : 0.0;
      e.allowed = band_width + slack + 3.0 * est.std_err;
      e.pass = std::abs(e.empirical - e.analytic) <= e.allowed;
      rep.worst_gap = std::max(rep.worst_gap, std::abs(e.empirical - e.analytic));
      if (!e.pass) rep.all_pass = false;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

OscillationBudget OscillationBudget::almost_lipschitz(double gamma0, double gamma1) {
  if (gamma0 < 0 || gamma1 < 0)
    throw InvalidParametersError("almost_lipschitz: budgets must be nonnegative");
  return OscillationBudget{[gamma0](double) { return gamma0; },
                           [gamma1](double delta) { return gamma1 * delta; }};
}

ConditionBReport check_condition_B(const Trajectory& traj, const OscillationBudget& budget,
                                   const std::vector<double>& delta_grid) {
  if (!budget.V || !budget.W) throw InvalidParametersError("check_condition_B: null budget");
  if (traj.times.size() < 2)
    throw InvalidParametersError("check_condition_B: trajectory too short");
  double T = traj.horizon;
  double min_gap = T;
  for (std::size_t i = 1; i < traj.times.size(); ++i)
    min_gap = std::min(min_gap, traj.times[i] - traj.times[i - 1]);

  ConditionBReport rep;
  rep.all_pass = true;
  for (double delta : delta_grid) {
    if (!(delta > 0.0) || delta > 1.0)
      throw InvalidParametersError("check_condition_B: delta must lie in (0, 1]");
    if (delta * T < min_gap - 1e-12)
      throw GridTooCoarseError("check_condition_B: delta*T=" + format_double(delta * T) +
                               " below the grid gap " + format_double(min_gap));
    ConditionBEntry entry;
    entry.delta = delta;
    entry.bound = budget.V(T) + budget.W(delta) * T;
    double window = delta * T;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      for (std::size_t j = i + 1; j < traj.times.size(); ++j) {
        if (traj.times[j] - traj.times[i] > window + 1e-12) break;
        double osc = std::abs(traj.values[j] - traj.values[i]);
        if (osc > entry.sup_osc) {
          entry.sup_osc = osc;
          entry.u_arg = traj.times[i] / T;
          entry.v_arg = traj.times[j] / T;
        }
      }
    }
    entry.pass = entry.sup_osc <= entry.bound;
    if (!entry.pass) rep.all_pass = false;
    rep.entries.push_back(entry);
  }
  return rep;
}

}  // namespace ldp
