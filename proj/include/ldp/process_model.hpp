#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ldp/fundamental_function.hpp"
#include "ldp/step_law.hpp"

namespace ldp {

struct Interarrival {
  enum class Kind { Exponential, Deterministic };
  Kind kind = Kind::Exponential;
  double param = 1.0;  // rate (exponential) or spacing (deterministic)
};

// Unit-rate random walk: one step per unit of time.
struct WalkFamily {
  StepLaw steps;
};

// Cumulative jumps at renewal epochs.
struct RenewalFamily {
  Interarrival interarrival;
  StepLaw jumps;
};

struct NoiseSpec {
  enum class Kind { LogEnvelope, GaussianVariance };
  Kind kind = Kind::LogEnvelope;
  double c = 1.0;      // envelope scale: |Y(t)| <= c * ln(2 + t)
  double kappa = 1.0;  // gaussian variance scale: Var Y(t) = kappa * t^r
  double r = 0.5;      // variance growth exponent, r < 2
};

struct InitialLaw {
  enum class Kind { Point, Band };
  Kind kind = Kind::Point;
  double z0 = 0.0;     // point mass
  double alpha = 0.0;  // band: uniform on ((alpha - eta) T, (alpha + eta) T)
  double eta = 0.0;
};

// Declarative model description (mirrors the experiment config keys).
struct ModelSpec {
  std::string family;  // bounded-step | rademacher | gaussian | compound-renewal
  std::vector<double> step_values, step_probs;
  double mean = 0.0, sigma = 1.0;
  std::string interarrival = "exponential";
  double interarrival_param = 1.0;
  std::string jump_family = "discrete";  // discrete | gaussian | exponential
  std::vector<double> jump_values, jump_probs;
  double jump_mean = 0.0, jump_sigma = 1.0, jump_rate = 1.0;
  std::string noise = "none";  // none | log-envelope | gaussian
  double noise_c = 1.0, noise_kappa = 1.0, noise_r = 0.5;
  double z0 = 0.0;
};

class ProcessModel {
 public:
  static ProcessModel bounded_step_walk(DiscreteLaw steps);
  static ProcessModel rademacher_walk();
  static ProcessModel gaussian_walk(double mean, double sigma);
  static ProcessModel compound_renewal(Interarrival inter, StepLaw jumps);
  static ProcessModel from_spec(const ModelSpec& spec);

  ProcessModel with_noise(NoiseSpec noise) const;
  ProcessModel with_initial(InitialLaw initial) const;

  const std::string& label() const { return label_; }
  const InitialLaw& initial_law() const { return initial_; }
  const std::optional<NoiseSpec>& noise() const { return noise_; }

  bool is_walk() const { return std::holds_alternative<WalkFamily>(core_); }
  const WalkFamily* walk() const { return std::get_if<WalkFamily>(&core_); }
  const RenewalFamily* renewal() const { return std::get_if<RenewalFamily>(&core_); }

  // Per-unit-time step law, available for walk families (what exponential
  // tilting requires).
  std::optional<StepLaw> per_step_law() const;

  // Normalized log moment generating limit of the noise-free core.
  FundamentalFunction analytic_A() const;

  // Step bound gamma for bounded-step walks.
  std::optional<double> step_bound() const;

  double draw_initial(double T, std::mt19937_64& rng) const;
  double noise_at(double t, std::mt19937_64& rng) const;  // 0 without noise

 private:
  ProcessModel() = default;

  std::string label_;
  std::variant<WalkFamily, RenewalFamily> core_{WalkFamily{StepLaw::rademacher()}};
  std::optional<NoiseSpec> noise_;
  InitialLaw initial_;
};

}  // namespace ldp
