#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ldp/fundamental_function.hpp"
#include "ldp/rate_function.hpp"

namespace ldp {

// Probe plan for the regularity certificate: interior differentiability
// points plus, for each finite domain edge, a sequence approaching it from
// inside along which the derivative magnitude must blow up.
struct SmoothnessProbeSpec {
  std::vector<double> interior_points;
  std::vector<std::vector<double>> boundary_approaches;
  double fd_tolerance = 1e-6;
  double steepness_growth = 2.0;  // required ratio of successive thresholds
};

SmoothnessProbeSpec default_smoothness_probes(const FundamentalFunction& A);

struct BoundaryEvidence {
  std::vector<double> probes;
  std::vector<double> derivative_magnitudes;
  bool steep = false;
};

// Probe-level evidence, not a proof: each verdict records what was checked.
struct SmoothnessReport {
  bool nonempty_interior = false;
  bool differentiable = false;
  bool steep = false;
  bool essentially_smooth = false;
  std::vector<double> interior_probes;
  std::vector<double> fd_defects;  // |fd(h) - fd(h/2)| per interior probe
  std::vector<BoundaryEvidence> boundaries;
  std::string notes;
};

SmoothnessReport check_essential_smoothness(const FundamentalFunction& A,
                                            const SmoothnessProbeSpec& probes);

struct LevelSetEntry {
  double level = 0.0;
  bool bounded = false;
  bool empty = false;
  double lo = 0.0, hi = 0.0;  // enclosing interval when nonempty and bounded
  std::string note;
};

struct GoodnessReport {
  std::vector<LevelSetEntry> levels;
  bool all_bounded = false;
};

// Bounds each sublevel set {alpha : D(alpha) <= level} by outward scanning
// and bisection of the crossing.
GoodnessReport check_goodness(const RateFunction& D, const std::vector<double>& levels);

}  // namespace ldp
