#include "ldp/step_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"
#include "ldp/logsumexp.hpp"
#include "ldp/rng.hpp"

namespace ldp {

StepLaw::StepLaw(DiscreteLaw law) : law_(std::move(law)) {
  auto& d = std::get<DiscreteLaw>(law_);
  if (d.values.empty() || d.values.size() != d.probs.size())
    throw InvalidParametersError("DiscreteLaw: empty or mismatched arrays");
  double total = 0.0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (!std::isfinite(d.values[i])) throw InvalidParametersError("DiscreteLaw: bad value");
    if (!(d.probs[i] > 0.0)) throw InvalidParametersError("DiscreteLaw: probs must be positive");
    total += d.probs[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidParametersError("DiscreteLaw: probabilities sum to " + format_double(total));
  cumulative_.resize(d.probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < d.probs.size(); ++i) {
    acc += d.probs[i];
    cumulative_[i] = acc;
  }
  cumulative_.back() = 1.0;
}

StepLaw::StepLaw(GaussianLaw law) : law_(law) {
  if (!(law.sigma > 0.0)) throw InvalidParametersError("GaussianLaw: sigma must be positive");
}

StepLaw::StepLaw(ExponentialLaw law) : law_(law) {
  if (!(law.rate > 0.0)) throw InvalidParametersError("ExponentialLaw: rate must be positive");
}

StepLaw StepLaw::rademacher() {
  return StepLaw(DiscreteLaw{{-1.0, 1.0}, {0.5, 0.5}});
}

double StepLaw::sample(std::mt19937_64& rng) const {
  if (const auto* d = std::get_if<DiscreteLaw>(&law_)) {
    double u = uniform01(rng);
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t idx = std::min(static_cast<std::size_t>(it - cumulative_.begin()),
                               d->values.size() - 1);
    return d->values[idx];
  }
  if (const auto* g = std::get_if<GaussianLaw>(&law_))
    return g->mean + g->sigma * standard_normal(rng);
  const auto& e = std::get<ExponentialLaw>(law_);
  double u = uniform01(rng);
  return -std::log1p(-u) / e.rate;
}

double StepLaw::cgf(double mu) const {
  if (!cgf_domain().contains(mu))
    throw OverflowRiskError("StepLaw::cgf: mu=" + format_double(mu) + " outside domain");
  if (const auto* d = std::get_if<DiscreteLaw>(&law_)) {
    std::vector<double> terms(d->values.size());
    for (std::size_t i = 0; i < d->values.size(); ++i)
      terms[i] = mu * d->values[i] + std::log(d->probs[i]);
    return log_sum_exp(terms);
  }
  if (const auto* g = std::get_if<GaussianLaw>(&law_))
    return g->mean * mu + 0.5 * g->sigma * g->sigma * mu * mu;
  const auto& e = std::get<ExponentialLaw>(law_);
  return -std::log1p(-mu / e.rate);
}

DomainInterval StepLaw::cgf_domain() const {
  if (std::holds_alternative<ExponentialLaw>(law_)) {
    DomainInterval dom;
    dom.hi = std::get<ExponentialLaw>(law_).rate;
    dom.hi_closed = false;
    return dom;
  }
  return DomainInterval::all();
}

double StepLaw::cgf_derivative(double mu) const {
  if (const auto* d = std::get_if<DiscreteLaw>(&law_)) {
    double m = -std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < d->values.size(); ++i)
      m = std::max(m, mu * d->values[i] + std::log(d->probs[i]));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d->values.size(); ++i) {
      double w = std::exp(mu * d->values[i] + std::log(d->probs[i]) - m);
      num += d->values[i] * w;
      den += w;
    }
    return num / den;
  }
  if (const auto* g = std::get_if<GaussianLaw>(&law_))
    return g->mean + g->sigma * g->sigma * mu;
  const auto& e = std::get<ExponentialLaw>(law_);
  if (!(mu < e.rate)) throw OverflowRiskError("cgf_derivative: mu outside domain");
  return 1.0 / (e.rate - mu);
}

double StepLaw::mean() const { return cgf_derivative(0.0); }

double StepLaw::variance() const {
  if (const auto* d = std::get_if<DiscreteLaw>(&law_)) {
    double m = mean(), s = 0.0;
    for (std::size_t i = 0; i < d->values.size(); ++i)
      s += d->probs[i] * (d->values[i] - m) * (d->values[i] - m);
    return s;
  }
  if (const auto* g = std::get_if<GaussianLaw>(&law_)) return g->sigma * g->sigma;
  const auto& e = std::get<ExponentialLaw>(law_);
  return 1.0 / (e.rate * e.rate);
}

std::optional<double> StepLaw::support_bound() const {
  if (const auto* d = std::get_if<DiscreteLaw>(&law_)) {
    double b = 0.0;
    for (double v : d->values) b = std::max(b, std::abs(v));
    return b;
  }
  return std::nullopt;
}

DomainInterval StepLaw::slope_range() const {
  if (const auto* d = std::get_if<DiscreteLaw>(&law_)) {
    double lo = *std::min_element(d->values.begin(), d->values.end());
    double hi = *std::max_element(d->values.begin(), d->values.end());
    return DomainInterval::closed(lo, hi);
  }
  if (std::holds_alternative<GaussianLaw>(law_)) return DomainInterval::all();
  DomainInterval r;  // exponential: means in (0, inf)
  r.lo = 0.0;
  r.lo_closed = false;
  return r;
}

StepLaw StepLaw::tilted(double mu) const {
  if (!cgf_domain().contains(mu))
    throw TargetOutsideDomainError("StepLaw::tilted: mu=" + format_double(mu) +
                                   " outside cgf domain");
  if (const auto* d = std::get_if<DiscreteLaw>(&law_)) {
    std::vector<double> logw(d->values.size());
    for (std::size_t i = 0; i < d->values.size(); ++i)
      logw[i] = mu * d->values[i] + std::log(d->probs[i]);
    double norm = log_sum_exp(logw);
    DiscreteLaw t;
    t.values = d->values;
    t.probs.resize(logw.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logw.size(); ++i) {
      t.probs[i] = std::exp(logw[i] - norm);
      total += t.probs[i];
    }
    for (auto& p : t.probs) p /= total;  // renormalize away rounding
    return StepLaw(std::move(t));
  }
  if (const auto* g = std::get_if<GaussianLaw>(&law_))
    return StepLaw(GaussianLaw{g->mean + g->sigma * g->sigma * mu, g->sigma});
  const auto& e = std::get<ExponentialLaw>(law_);
  return StepLaw(ExponentialLaw{e.rate - mu});
}

double StepLaw::log_density(double x) const {
  if (const auto* d = std::get_if<DiscreteLaw>(&law_)) {
    for (std::size_t i = 0; i < d->values.size(); ++i)
      if (std::abs(d->values[i] - x) <= 1e-12 * (1.0 + std::abs(x)))
        return std::log(d->probs[i]);
    throw InvalidParametersError("log_density: x is not an atom of the law");
  }
  if (const auto* g = std::get_if<GaussianLaw>(&law_)) {
    double z = (x - g->mean) / g->sigma;
    return -0.5 * z * z - std::log(g->sigma) - 0.9189385332046727;  // ln sqrt(2 pi)
  }
  const auto& e = std::get<ExponentialLaw>(law_);
  if (x < 0) return -std::numeric_limits<double>::infinity();
  return std::log(e.rate) - e.rate * x;
}

}  // namespace ldp
