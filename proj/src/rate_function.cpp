#include "ldp/rate_function.hpp"

#include <algorithm>
#include <cmath>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"

namespace ldp {

RateFunction RateFunction::closed_form(std::string label, DomainInterval dom,
                                       std::function<double(double)> eval,
                                       std::optional<double> zero_point) {
  if (!eval) throw InvalidParametersError("RateFunction: null evaluator");
  RateFunction d;
  d.label_ = std::move(label);
  d.dom_ = dom;
  d.eval_ = std::move(eval);
  d.zero_point_ = zero_point;
  return d;
}

RateFunction RateFunction::from_grid(std::string label, std::vector<double> alphas,
                                     std::vector<ExtendedReal> values,
                                     std::optional<double> zero_point) {
  if (alphas.size() != values.size() || alphas.empty())
    throw InvalidParametersError("RateFunction grid: size mismatch or empty");
  for (std::size_t i = 1; i < alphas.size(); ++i)
    if (!(alphas[i] > alphas[i - 1]))
      throw InvalidParametersError("RateFunction grid: abscissae not strictly increasing");
  std::size_t first = alphas.size(), last = 0;
  bool any_finite = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].finite()) {
      if (values[i].value() < -1e-9)
        throw InvalidParametersError("RateFunction grid: negative value " +
                                     format_double(values[i].value()));
      if (!any_finite) first = i;
      last = i;
      any_finite = true;
    } else if (any_finite && i > 0 && values[i - 1].finite()) {
      // fine: finite range may end
    }
  }
  if (!any_finite) throw InvalidParametersError("RateFunction grid: identically infinite");
  // The finite set of a convex extended function is an interval; reject gaps.
  for (std::size_t i = first; i <= last; ++i)
    if (!values[i].finite())
      throw InvalidParametersError("RateFunction grid: infinite value inside finite range");
  // Clamp tiny negative round-off to exact zero.
  for (auto& v : values)
    if (v.finite() && v.value() < 0.0) v = ExtendedReal(0.0);

  RateFunction d;
  d.label_ = std::move(label);
  d.grid_ = true;
  d.alphas_ = std::move(alphas);
  d.values_ = std::move(values);
  d.first_finite_ = first;
  d.last_finite_ = last;
  d.dom_ = DomainInterval::closed(d.alphas_[first], d.alphas_[last]);
  d.zero_point_ = zero_point;
  return d;
}

ExtendedReal RateFunction::operator()(double alpha) const {
  if (!grid_) {
    if (!dom_.contains(alpha)) return ExtendedReal::infinity();
    return ExtendedReal(eval_(alpha));
  }
  double lo = alphas_[first_finite_], hi = alphas_[last_finite_];
  if (alpha < lo || alpha > hi) return ExtendedReal::infinity();
  auto it = std::lower_bound(alphas_.begin() + static_cast<std::ptrdiff_t>(first_finite_),
                             alphas_.begin() + static_cast<std::ptrdiff_t>(last_finite_) + 1,
                             alpha);
  std::size_t idx = static_cast<std::size_t>(it - alphas_.begin());
  if (idx <= last_finite_ && alphas_[idx] == alpha) return values_[idx];
  double a0 = alphas_[idx - 1], a1 = alphas_[idx];
  double v0 = values_[idx - 1].value(), v1 = values_[idx].value();
  double t = (alpha - a0) / (a1 - a0);
  return ExtendedReal(v0 + t * (v1 - v0));
}

RateFunction RateFunction::quadratic(double mean, double sigma) {
  if (sigma <= 0) throw InvalidParametersError("quadratic: sigma must be positive");
  return closed_form(
      "quadratic", DomainInterval::all(),
      [mean, sigma](double a) { return (a - mean) * (a - mean) / (2.0 * sigma * sigma); },
      mean);
}

RateFunction RateFunction::binary_entropy() {
  auto eval = [](double a) {
    double p = 0.5 * (1.0 + a), q = 0.5 * (1.0 - a);
    double s = 0.0;
    if (p > 0) s += p * std::log(2.0 * p);
    if (q > 0) s += q * std::log(2.0 * q);
    return s;
  };
  return closed_form("binary_entropy", DomainInterval::closed(-1.0, 1.0), eval, 0.0);
}

RateFunction RateFunction::exponential_rate(double rate) {
  if (rate <= 0) throw InvalidParametersError("exponential_rate: rate must be positive");
  DomainInterval dom;
  dom.lo = 0.0;
  dom.lo_closed = false;
  return closed_form(
      "exponential_rate", dom,
      [rate](double a) { return rate * a - 1.0 - std::log(a * rate); }, 1.0 / rate);
}

RateFunction RateFunction::poisson_rate(double rate) {
  if (rate <= 0) throw InvalidParametersError("poisson_rate: rate must be positive");
  DomainInterval dom;
  dom.lo = 0.0;
  dom.lo_closed = true;
  auto eval = [rate](double a) {
    if (a == 0.0) return rate;
    return a * std::log(a / rate) - a + rate;
  };
  return closed_form("poisson_rate", dom, eval, rate);
}

RateFunction RateFunction::indicator_at(double a) {
  return closed_form("indicator", DomainInterval::point(a), [](double) { return 0.0; }, a);
}

}  // namespace ldp
