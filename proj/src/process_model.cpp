#include "ldp/process_model.hpp"

#include <cmath>

#include "ldp/errors.hpp"
#include "ldp/rng.hpp"

namespace ldp {

ProcessModel ProcessModel::bounded_step_walk(DiscreteLaw steps) {
  ProcessModel m;
  m.label_ = "bounded-step";
  m.core_ = WalkFamily{StepLaw(std::move(steps))};
  return m;
}

ProcessModel ProcessModel::rademacher_walk() {
  ProcessModel m;
  m.label_ = "rademacher";
  m.core_ = WalkFamily{StepLaw::rademacher()};
  return m;
}

ProcessModel ProcessModel::gaussian_walk(double mean, double sigma) {
  ProcessModel m;
  m.label_ = "gaussian";
  m.core_ = WalkFamily{StepLaw(GaussianLaw{mean, sigma})};
  return m;
}

ProcessModel ProcessModel::compound_renewal(Interarrival inter, StepLaw jumps) {
  if (!(inter.param > 0.0))
    throw InvalidParametersError("compound_renewal: interarrival parameter must be positive");
  ProcessModel m;
  m.label_ = "compound-renewal";
  m.core_ = RenewalFamily{inter, std::move(jumps)};
  return m;
}

ProcessModel ProcessModel::with_noise(NoiseSpec noise) const {
  if (noise.kind == NoiseSpec::Kind::GaussianVariance && !(noise.r < 2.0))
    throw InvalidParametersError("with_noise: variance exponent must satisfy r < 2");
  if (noise.kind == NoiseSpec::Kind::LogEnvelope && !(noise.c >= 0.0))
    throw InvalidParametersError("with_noise: envelope scale must be nonnegative");
  if (noise.kind == NoiseSpec::Kind::GaussianVariance && !(noise.kappa >= 0.0))
    throw InvalidParametersError("with_noise: variance scale must be nonnegative");
  ProcessModel m = *this;
  m.noise_ = noise;
  m.label_ += "+noise";
  return m;
}

ProcessModel ProcessModel::with_initial(InitialLaw initial) const {
  if (initial.kind == InitialLaw::Kind::Band && !(initial.eta >= 0.0))
    throw InvalidParametersError("with_initial: band half-width must be nonnegative");
  ProcessModel m = *this;
  m.initial_ = initial;
  return m;
}

std::optional<StepLaw> ProcessModel::per_step_law() const {
  if (const auto* w = std::get_if<WalkFamily>(&core_)) return w->steps;
  return std::nullopt;
}

FundamentalFunction ProcessModel::analytic_A() const {
  if (const auto* w = std::get_if<WalkFamily>(&core_)) {
    StepLaw law = w->steps;
    return FundamentalFunction(
        "A_" + label_, law.cgf_domain(), [law](double mu) { return law.cgf(mu); },
        [law](double mu) { return law.cgf_derivative(mu); });
  }
  const auto& r = std::get<RenewalFamily>(core_);
  StepLaw jumps = r.jumps;
  if (r.interarrival.kind == Interarrival::Kind::Exponential) {
    // Renewal epochs with exponential spacing arrive at Poisson rate, so the
    // limit is rate * (m_jump(mu) - 1).
    double rate = r.interarrival.param;
    return FundamentalFunction(
        "A_" + label_, jumps.cgf_domain(),
        [jumps, rate](double mu) { return rate * std::expm1(jumps.cgf(mu)); },
        [jumps, rate](double mu) {
          return rate * std::exp(jumps.cgf(mu)) * jumps.cgf_derivative(mu);
        });
  }
  double spacing = r.interarrival.param;
  return FundamentalFunction(
      "A_" + label_, jumps.cgf_domain(),
      [jumps, spacing](double mu) { return jumps.cgf(mu) / spacing; },
      [jumps, spacing](double mu) { return jumps.cgf_derivative(mu) / spacing; });
}

std::optional<double> ProcessModel::step_bound() const {
  if (const auto* w = std::get_if<WalkFamily>(&core_)) return w->steps.support_bound();
  return std::nullopt;
}

double ProcessModel::draw_initial(double T, std::mt19937_64& rng) const {
  if (initial_.kind == InitialLaw::Kind::Point) return initial_.z0;
  double lo = (initial_.alpha - initial_.eta) * T;
  double hi = (initial_.alpha + initial_.eta) * T;
  return lo + (hi - lo) * uniform01(rng);
}

double ProcessModel::noise_at(double t, std::mt19937_64& rng) const {
  if (!noise_) return 0.0;
  if (noise_->kind == NoiseSpec::Kind::LogEnvelope)
    return noise_->c * std::log(2.0 + t) * (2.0 * uniform01(rng) - 1.0);
  double sd = std::sqrt(noise_->kappa * std::pow(t, noise_->r));
  return sd * standard_normal(rng);
}

ProcessModel ProcessModel::from_spec(const ModelSpec& spec) {
  auto jump_law = [&]() -> StepLaw {
    if (spec.jump_family == "discrete") {
      if (spec.jump_values.empty())
        throw InvalidParametersError("model spec: discrete jumps need values/probs");
      return StepLaw(DiscreteLaw{spec.jump_values, spec.jump_probs});
    }
    if (spec.jump_family == "gaussian")
      return StepLaw(GaussianLaw{spec.jump_mean, spec.jump_sigma});
    if (spec.jump_family == "exponential") return StepLaw(ExponentialLaw{spec.jump_rate});
    throw UnknownFamilyError("unknown jump family '" + spec.jump_family + "'");
  };

  ProcessModel m = [&]() -> ProcessModel {
    if (spec.family == "rademacher") return rademacher_walk();
    if (spec.family == "bounded-step") {
      if (spec.step_values.empty())
        throw InvalidParametersError("model spec: bounded-step needs step values/probs");
      return bounded_step_walk(DiscreteLaw{spec.step_values, spec.step_probs});
    }
    if (spec.family == "gaussian") return gaussian_walk(spec.mean, spec.sigma);
    if (spec.family == "compound-renewal") {
      Interarrival inter;
      if (spec.interarrival == "exponential")
        inter.kind = Interarrival::Kind::Exponential;
      else if (spec.interarrival == "deterministic")
        inter.kind = Interarrival::Kind::Deterministic;
      else
        throw UnknownFamilyError("unknown interarrival kind '" + spec.interarrival + "'");
      inter.param = spec.interarrival_param;
      return compound_renewal(inter, jump_law());
    }
    throw UnknownFamilyError("unknown model family '" + spec.family + "'");
  }();

  if (spec.noise == "log-envelope")
    m = m.with_noise(NoiseSpec{NoiseSpec::Kind::LogEnvelope, spec.noise_c, 0.0, 0.0});
  else if (spec.noise == "gaussian")
    m = m.with_noise(
        NoiseSpec{NoiseSpec::Kind::GaussianVariance, 0.0, spec.noise_kappa, spec.noise_r});
  else if (spec.noise != "none")
    throw UnknownFamilyError("unknown noise kind '" + spec.noise + "'");

  if (spec.z0 != 0.0)
    m = m.with_initial(InitialLaw{InitialLaw::Kind::Point, spec.z0, 0.0, 0.0});
  return m;
}

}  // namespace ldp
