#pragma once

#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "ldp/domain.hpp"

namespace ldp {

// Finite-support law; probabilities must sum to 1 within 1e-12.
struct DiscreteLaw {
  std::vector<double> values;
  std::vector<double> probs;
};

struct GaussianLaw {
  double mean = 0.0;
  double sigma = 1.0;
};

struct ExponentialLaw {
  double rate = 1.0;
};

// One increment distribution: sampling, log moment generating function, and
// exponential tilting all in one place so estimators and models agree.
class StepLaw {
 public:
  explicit StepLaw(DiscreteLaw law);
  explicit StepLaw(GaussianLaw law);
  explicit StepLaw(ExponentialLaw law);

  static StepLaw rademacher();

  double sample(std::mt19937_64& rng) const;
  // ln E exp(mu * X); throws OverflowRiskError outside cgf_domain.
  double cgf(double mu) const;
  DomainInterval cgf_domain() const;
  double cgf_derivative(double mu) const;  // mean under the mu-tilt
  double mean() const;
  double variance() const;
  // Largest |x| the law can emit, when bounded.
  std::optional<double> support_bound() const;
  // Closure of the set of reachable tilted means (the slope range of the cgf).
  DomainInterval slope_range() const;

  // Law with density proportional to exp(mu * x) d(base).
  StepLaw tilted(double mu) const;

  // log mass (discrete, matched to the nearest atom) or log density.
  double log_density(double x) const;

  bool discrete() const { return std::holds_alternative<DiscreteLaw>(law_); }
  const DiscreteLaw* as_discrete() const { return std::get_if<DiscreteLaw>(&law_); }

 private:
  std::variant<DiscreteLaw, GaussianLaw, ExponentialLaw> law_;
  std::vector<double> cumulative_;  // discrete sampling table
};

}  // namespace ldp
