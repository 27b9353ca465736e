#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ldp/cadlag_path.hpp"
#include "ldp/extended_real.hpp"
#include "ldp/partition.hpp"
#include "ldp/rate_function.hpp"

namespace ldp {

// Piecewise-linear interpolation of f through the partition points.
CadlagPath interpolate(const CadlagPath& f, const Partition& p);

// (t - s) * D((f(t) - f(s)) / (t - s)); the degenerate case t <= s is a
// typed error rather than a 0/0.
ExtendedReal interval_function(const CadlagPath& f, const RateFunction& D, double s,
                               double t);

// Sum of interval terms over the segments of a piecewise-linear path: the
// slope-cost integral of f against D.
ExtendedReal integral_I(const CadlagPath& f, const RateFunction& D);

struct RefinementSchedule {
  enum class Kind { Dyadic, Uniform };
  Kind kind = Kind::Dyadic;
  int max_level = 24;               // segments: 2^level (dyadic) or level (uniform)
  double tolerance = 1e-8;          // stop when successive values are this close
  double divergence_ceiling = 1e6;  // declare divergence past this, if growing
  bool absorb_path_points = true;   // always include the path's own abscissae
};

struct DeviationIntegralResult {
  ExtendedReal value;  // supremum estimate (+infinity on divergence)
  std::vector<std::pair<std::size_t, ExtendedReal>> trace;  // (segments, I)
  bool diverged = false;
  // A convergence verdict is only issued for continuous (piecewise-linear)
  // paths; for jump paths a stabilized trace is reported with both flags
  // false, because refinement suprema over jumps are outside what the
  // stabilization criterion can certify.
  bool converged = false;
};

// Supremum of I(interpolate(f, p)) over the refinement schedule.
DeviationIntegralResult deviation_integral_J(const CadlagPath& f, const RateFunction& D,
                                             const RefinementSchedule& schedule = {});

}  // namespace ldp
