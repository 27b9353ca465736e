#include "ldp/tilting.hpp"

#include <cmath>

#include "ldp/conjugate.hpp"
#include "ldp/csv.hpp"
#include "ldp/errors.hpp"

namespace ldp {

double tilt_for_target(const FundamentalFunction& A, double beta) {
  const DomainInterval& dom = A.domain();
  if (!dom.interior_nonempty())
    throw EmptyDomainError("tilt_for_target: domain has empty interior");

  auto slope = [&](double mu) { return A.derivative(mu); };

  // Start from an interior anchor and push the bracket ends toward the
  // domain edges (geometrically for finite edges, doubling for infinite
  // ones) until the target slope is straddled.
  double anchor = 0.0;
  if (!dom.interior_contains(anchor)) {
    double lo = dom.lo_finite() ? dom.lo : dom.hi - 2.0;
    double hi = dom.hi_finite() ? dom.hi : dom.lo + 2.0;
    anchor = 0.5 * (lo + hi);
  }
  double lo = anchor, hi = anchor;
  auto push_lo = [&] {
    if (dom.lo_finite())
      lo = dom.lo + 0.5 * (lo - dom.lo);
    else
      lo = anchor - std::max(1.0, 2.0 * (anchor - lo));
  };
  auto push_hi = [&] {
    if (dom.hi_finite())
      hi = dom.hi - 0.5 * (dom.hi - hi);
    else
      hi = anchor + std::max(1.0, 2.0 * (hi - anchor));
  };
  push_lo();
  push_hi();
  bool bracketed = false;
  for (int round = 0; round < 200; ++round) {
    // A bracket end collapsing onto a finite edge means the slope never
    // reaches beta on the representable interior.
    if (!dom.interior_contains(lo) || !dom.interior_contains(hi)) break;
    if (slope(lo) <= beta && beta <= slope(hi)) {
      bracketed = true;
      break;
    }
    if (slope(lo) > beta)
      push_lo();
    else
      push_hi();
  }
  if (!bracketed)
    throw TargetOutsideDomainError("tilt_for_target: beta=" + format_double(beta) +
                                   " is not a reachable slope of '" + A.label() + "'");

  for (int i = 0; i < 400; ++i) {
    double mid = 0.5 * (lo + hi);
    double s = slope(mid);
    if (std::abs(s - beta) <= 1e-10) return mid;
    if (s < beta)
      lo = mid;
    else
      hi = mid;
  }
  double mu = 0.5 * (lo + hi);
  if (std::abs(slope(mu) - beta) > 1e-10)
    throw TargetOutsideDomainError(
        "tilt_for_target: bisection stalled before reaching the slope tolerance at beta=" +
        format_double(beta));
  return mu;
}

TiltedLaw::TiltedLaw(StepLaw base, double mu)
    : base_(std::move(base)), mu_(mu), log_m_(base_.cgf(mu)), tilted_(base_.tilted(mu)) {}

RateFunction walk_rate_function(const FundamentalFunction& A, const DomainInterval& slopes) {
  SearchSpec spec;
  // Wide bracket: steep families need large tilts before flattening out.
  spec.mu_lo = -60.0;
  spec.mu_hi = 60.0;
  auto eval = [A, spec](double alpha) {
    ExtendedReal v = conjugate_point(A, alpha, spec);
    if (!v.finite())
      throw InvalidParametersError("walk_rate_function: divergent conjugate inside " +
                                   std::string("the slope range at alpha=") +
                                   format_double(alpha));
    return v.value();
  };
  std::optional<double> zero;
  if (A.domain().interior_contains(0.0)) zero = A.derivative(0.0);
  return RateFunction::closed_form("rate_" + A.label(), slopes, eval, zero);
}

}  // namespace ldp
