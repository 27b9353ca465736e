#pragma once

#include <algorithm>
#include <cmath>

#include "ldp/errors.hpp"

namespace ldp {

// Window half-width schedule eps(T) = max(c * T^(-p), floor).  The exponent
// must sit in (0, 1/2): slow enough that windows keep filling with mass,
// strictly decaying so the local statement sharpens.
struct EpsilonSchedule {
  double c = 0.5;
  double p = 1.0 / 3.0;
  double floor = 0.0;

  void validate() const {
    if (!(c > 0.0)) throw InvalidParametersError("EpsilonSchedule: c must be positive");
    if (!(p > 0.0) || !(p < 0.5))
      throw InvalidParametersError("EpsilonSchedule: exponent must lie in (0, 1/2)");
    if (floor < 0.0) throw InvalidParametersError("EpsilonSchedule: negative floor");
  }

  double operator()(double T) const {
    if (!(T > 0.0)) throw InvalidParametersError("EpsilonSchedule: T must be positive");
    return std::max(c * std::pow(T, -p), floor);
  }

  // Constant window realized as a pure floor (the decaying term is driven
  // below any horizon of interest).
  static EpsilonSchedule fixed(double eps) {
    if (!(eps > 0.0))
      throw InvalidParametersError("EpsilonSchedule: fixed window must be positive");
    return EpsilonSchedule{1e-300, 1.0 / 3.0, eps};
  }
};

}  // namespace ldp
