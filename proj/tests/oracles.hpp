#pragma once

// Independent reference computations for the test suites.  Everything here
// is deliberately naive — closed forms, dense grids, exhaustive enumeration,
// direct binomial arithmetic — so library results can be checked against
// code that shares none of their machinery.  The one exception is the
// functional-tube predicate, which reuses the library's path distance on
// purpose: the oracle contributes the exhaustive probability; the geometry
// must be the very predicate the estimator applies, verdict for verdict.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// --- closed-form rate functions ------------------------------------------

// Conjugate of ln cosh: ((1+a)/2) ln(1+a) + ((1-a)/2) ln(1-a) on [-1, 1].
inline double rademacher_rate(double a) {
  if (std::abs(a) > 1.0) return kInf;
  if (a == 1.0 || a == -1.0) return std::log(2.0);
  return 0.5 * (1.0 + a) * std::log1p(a) + 0.5 * (1.0 - a) * std::log1p(-a);
}

inline double gaussian_rate(double a, double mean, double sigma) {
  double d = a - mean;
  return d * d / (2.0 * sigma * sigma);
}

// Conjugate of -ln(1 - mu/rate) (exponential steps): rate*a - 1 - ln(rate*a).
inline double exponential_step_rate(double a, double rate) {
  if (!(a > 0.0)) return kInf;
  return rate * a - 1.0 - std::log(rate * a);
}

// Conjugate of rate*(e^mu - 1): a ln(a/rate) - a + rate for a > 0.
inline double poisson_rate(double a, double rate) {
  if (a < 0.0) return kInf;
  if (a == 0.0) return rate;
  return a * std::log(a / rate) - a + rate;
}

// --- dense-grid conjugation ----------------------------------------------

// sup over an even mu grid of (alpha * mu - A(mu)); a brute-force stand-in
// for the library's one-dimensional maximization.
inline double grid_conjugate(const std::function<double(double)>& A, double alpha,
                             double mu_lo, double mu_hi, int points = 200001) {
  double best = -kInf;
  for (int i = 0; i < points; ++i) {
    double mu = mu_lo + (mu_hi - mu_lo) * static_cast<double>(i) /
                            static_cast<double>(points - 1);
    double v = alpha * mu - A(mu);
    if (v > best) best = v;
  }
  return best;
}

// --- exhaustive walk enumeration -----------------------------------------

// Visits every length-T trajectory of an i.i.d. finite-support walk,
// reporting the step sequence and its probability.  Feasible scope: tests
// keep values.size()^T within a few hundred thousand.
inline void for_each_walk_path(
    const std::vector<double>& values, const std::vector<double>& probs, int T,
    const std::function<void(const std::vector<double>&, double)>& visit) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(T), 0);
  std::vector<double> steps(static_cast<std::size_t>(T));
  for (;;) {
    double p = 1.0;
    for (int t = 0; t < T; ++t) {
      steps[static_cast<std::size_t>(t)] = values[idx[static_cast<std::size_t>(t)]];
      p *= probs[idx[static_cast<std::size_t>(t)]];
    }
    visit(steps, p);
    int carry = T - 1;
    while (carry >= 0) {
      auto& d = idx[static_cast<std::size_t>(carry)];
      if (++d < values.size()) break;
      d = 0;
      --carry;
    }
    if (carry < 0) break;
  }
}

// Exact P(|S_T / T - beta| < eps) by enumeration (strict window, matching
// the estimators).
inline double enum_local_prob(const std::vector<double>& values,
                              const std::vector<double>& probs, int T, double beta,
                              double eps) {
  double total = 0.0;
  for_each_walk_path(values, probs, T,
                     [&](const std::vector<double>& steps, double p) {
                       double s = 0.0;
                       for (double x : steps) s += x;
                       if (std::abs(s / T - beta) < eps) total += p;
                     });
  return total;
}

// Exact joint window probability over consecutive step blocks: block k holds
// step_counts[k] steps and its mean must land within eps of betas[k].
inline double enum_fdd_prob(const std::vector<double>& values,
                            const std::vector<double>& probs,
                            const std::vector<long>& step_counts,
                            const std::vector<double>& betas, double eps) {
  int T = 0;
  for (long c : step_counts) T += static_cast<int>(c);
  double total = 0.0;
  for_each_walk_path(values, probs, T,
                     [&](const std::vector<double>& steps, double p) {
                       std::size_t at = 0;
                       for (std::size_t k = 0; k < step_counts.size(); ++k) {
                         double s = 0.0;
                         for (long j = 0; j < step_counts[k]; ++j) s += steps[at++];
                         if (!(std::abs(s / static_cast<double>(step_counts[k]) -
                                        betas[k]) < eps))
                           return;
                       }
                       total += p;
                     });
  return total;
}

// Exact probability that a path-dependent predicate holds; the caller
// supplies the verdict function (e.g. the library's own tube check).
inline double enum_event_prob(
    const std::vector<double>& values, const std::vector<double>& probs, int T,
    const std::function<bool(const std::vector<double>&)>& event) {
  double total = 0.0;
  for_each_walk_path(values, probs, T,
                     [&](const std::vector<double>& steps, double p) {
                       if (event(steps)) total += p;
                     });
  return total;
}

// --- exact symmetric-binomial window probabilities -----------------------

inline double log_sum_exp(const std::vector<double>& xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (m == -kInf) return -kInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// ln P(|S_T / T - beta| < eps) for the fair +-1 walk, via lgamma binomial
// sums: S_T = T - 2j over j down-steps.  Scales to horizons far beyond
// enumeration.  Window edges must not fall exactly on an attainable slope.
inline double exact_pm1_local_ln_p(long T, double beta, double eps) {
  std::vector<double> terms;
  double lt = std::lgamma(static_cast<double>(T) + 1.0);
  for (long j = 0; j <= T; ++j) {
    double slope = (static_cast<double>(T) - 2.0 * static_cast<double>(j)) /
                   static_cast<double>(T);
    if (!(std::abs(slope - beta) < eps)) continue;
    terms.push_back(lt - std::lgamma(static_cast<double>(j) + 1.0) -
                    std::lgamma(static_cast<double>(T - j) + 1.0));
  }
  if (terms.empty()) return -kInf;
  return log_sum_exp(terms) - static_cast<double>(T) * std::log(2.0);
}

// ln of the two-block probability with targets +1 and -1 over halves of an
// even horizon: each half must hold its mean within eps of its extreme
// slope, so each factor is a small binomial tail.
inline double exact_pm1_halfhalf_ln_p(long T, double eps) {
  long half = T / 2;
  std::vector<double> terms;
  double lh = std::lgamma(static_cast<double>(half) + 1.0);
  for (long j = 0; j <= half; ++j) {
    double slope = (static_cast<double>(half) - 2.0 * static_cast<double>(j)) /
                   static_cast<double>(half);
    if (!(std::abs(slope - 1.0) < eps)) continue;
    terms.push_back(lh - std::lgamma(static_cast<double>(j) + 1.0) -
                    std::lgamma(static_cast<double>(half - j) + 1.0));
  }
  if (terms.empty()) return -kInf;
  double one_side = log_sum_exp(terms) - static_cast<double>(half) * std::log(2.0);
  return 2.0 * one_side;  // the mirrored block has the same mass by symmetry
}

// --- small numeric helpers -----------------------------------------------

// Least-squares slope of y against x.
inline double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

inline double central_difference(const std::function<double(double)>& f, double x,
                                 double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
