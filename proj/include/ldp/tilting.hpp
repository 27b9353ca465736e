#pragma once

#include <random>

#include "ldp/fundamental_function.hpp"
#include "ldp/rate_function.hpp"
#include "ldp/step_law.hpp"

namespace ldp {

// Solves A'(mu) = beta by bisection to |A'(mu) - beta| <= 1e-10.  beta must
// be reachable: strictly inside the closure of the derivative range over the
// probed part of the domain.
double tilt_for_target(const FundamentalFunction& A, double beta);

// A step law together with its exponential tilt and the likelihood-ratio
// bookkeeping, all in log scale.
class TiltedLaw {
 public:
  TiltedLaw(StepLaw base, double mu);

  double sample(std::mt19937_64& rng) const { return tilted_.sample(rng); }
  double mu() const { return mu_; }
  double log_normalizer() const { return log_m_; }  // ln m(mu)
  const StepLaw& base() const { return base_; }
  const StepLaw& law() const { return tilted_; }

  // ln of dP/dP~ for a block of `steps` increments summing to `sum`:
  // steps * ln m(mu) - mu * sum.
  double log_likelihood_ratio(double sum, long steps) const {
    return static_cast<double>(steps) * log_m_ - mu_ * sum;
  }

 private:
  StepLaw base_;
  double mu_;
  double log_m_;
  StepLaw tilted_;
};

// The rate function of a walk model's step law as a closed-form object:
// evaluation runs the conjugation engine against the analytic A.
RateFunction walk_rate_function(const FundamentalFunction& A, const DomainInterval& slopes);

}  // namespace ldp
