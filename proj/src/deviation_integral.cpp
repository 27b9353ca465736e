#include "ldp/deviation_integral.hpp"

#include <cmath>
#include <limits>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"

namespace ldp {

CadlagPath interpolate(const CadlagPath& f, const Partition& p) {
  std::vector<std::pair<double, double>> nodes;
  nodes.reserve(p.points().size());
  for (double s : p.points()) nodes.emplace_back(s, f.value(s));
  return CadlagPath::piecewise_linear(std::move(nodes));
}

ExtendedReal interval_function(const CadlagPath& f, const RateFunction& D, double s,
                               double t) {
  if (!(t > s))
    throw DegenerateIntervalError("interval_function: need s < t, got s=" +
                                  format_double(s) + " t=" + format_double(t));
  double slope = (f.value(t) - f.value(s)) / (t - s);
  return scale(t - s, D(slope));
}

ExtendedReal integral_I(const CadlagPath& f, const RateFunction& D) {
  if (!f.continuous())
    throw InvalidParametersError("integral_I: path must be piecewise linear");
  const auto& s = f.abscissae();
  const auto& v = f.levels();
  ExtendedReal total(0.0);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    double h = s[i + 1] - s[i];
    double slope = (v[i + 1] - v[i]) / h;
    total += scale(h, D(slope));
    if (total.infinite()) return total;
  }
  // A final flat piece up to 1 contributes (1 - s_last) * D(0).
  if (s.back() < 1.0) total += scale(1.0 - s.back(), D(0.0));
  return total;
}

DeviationIntegralResult deviation_integral_J(const CadlagPath& f, const RateFunction& D,
                                             const RefinementSchedule& schedule) {
  if (schedule.max_level < 0 || schedule.tolerance <= 0 || schedule.divergence_ceiling <= 0)
    throw InvalidParametersError("deviation_integral_J: bad schedule");
  DeviationIntegralResult result;
  result.value = ExtendedReal(0.0);

  std::vector<double> absorb;
  if (schedule.absorb_path_points) absorb = f.abscissae();

  ExtendedReal prev(0.0);
  bool have_prev = false;
  std::size_t prev_segments = 0;
  // "Not yet observed" marker for the increment comparison only.
  double prev_increment = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= schedule.max_level; ++level) {
    Partition base = schedule.kind == RefinementSchedule::Kind::Dyadic
                         ? Partition::dyadic(level)
                         : Partition::uniform(static_cast<std::size_t>(level) + 1);
    Partition p = base.merged_with(absorb);
    // When absorption makes a level collapse to the previous partition size
    // (dyadic levels are nested, so equal size means equal partition) there
    // is no new information; comparing would fake stabilization.
    if (have_prev && p.segments() == prev_segments) continue;
    ExtendedReal I = integral_I(interpolate(f, p), D);
    result.trace.emplace_back(p.segments(), I);
    result.value = max(result.value, I);

    if (I.infinite()) {
      // The supremum is definitively infinite.
      result.diverged = true;
      return result;
    }
    if (have_prev) {
      double increment = I.value() - prev.value();
      if (I.value() > schedule.divergence_ceiling && increment >= prev_increment &&
          increment > 0) {
        result.diverged = true;
        result.value = ExtendedReal::infinity();
        return result;
      }
      if (std::abs(increment) < schedule.tolerance) {
        result.value = I;
        result.converged = f.continuous();
        return result;
      }
      prev_increment = increment;
    }
    prev = I;
    prev_segments = p.segments();
    have_prev = true;
  }
  // Budget exhausted without stabilization or divergence: report the last
  // value with no verdict.
  result.value = prev;
  return result;
}

}  // namespace ldp
