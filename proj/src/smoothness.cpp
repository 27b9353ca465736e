#include "ldp/smoothness.hpp"

#include <algorithm>
#include <cmath>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"

namespace ldp {

SmoothnessProbeSpec default_smoothness_probes(const FundamentalFunction& A) {
  const DomainInterval& dom = A.domain();
  SmoothnessProbeSpec spec;
  if (!dom.interior_nonempty()) return spec;  // nothing to probe
  double lo = dom.lo_finite() ? dom.lo : -2.0;
  double hi = dom.hi_finite() ? dom.hi : 2.0;
  if (lo >= hi) lo = hi - 1.0;
  double width = hi - lo;
  for (int k = 1; k <= 21; ++k)
    spec.interior_points.push_back(lo + width * k / 22.0);
  auto approach = [&](double edge, int sign) {
    std::vector<double> seq;
    double d0 = 0.25 * width;
    for (int k = 0; k < 9; ++k) seq.push_back(edge + sign * d0 * std::pow(4.0, -k));
    return seq;
  };
  if (dom.lo_finite()) spec.boundary_approaches.push_back(approach(dom.lo, +1));
  if (dom.hi_finite()) spec.boundary_approaches.push_back(approach(dom.hi, -1));
  return spec;
}

SmoothnessReport check_essential_smoothness(const FundamentalFunction& A,
                                            const SmoothnessProbeSpec& probes) {
  const DomainInterval& dom = A.domain();
  SmoothnessReport rep;
  rep.nonempty_interior = dom.interior_nonempty();
  rep.notes = "probe-level evidence; verdicts certify only the probed points";
  if (!rep.nonempty_interior) {
    rep.differentiable = false;
    rep.steep = false;
    rep.essentially_smooth = false;
    return rep;
  }

  auto eval = [&](double mu) {
    ExtendedReal v = A(mu);
    if (!v.finite())
      throw ProbeOutsideDomainError("smoothness: evaluation left the domain at mu=" +
                                    format_double(mu));
    return v.value();
  };

  // Differentiability: the symmetric difference must be stable under halving.
  rep.differentiable = true;
  for (double mu : probes.interior_points) {
    if (!dom.interior_contains(mu))
      throw ProbeOutsideDomainError("smoothness: interior probe outside domain, mu=" +
                                    format_double(mu));
    double gap_lo = dom.lo_finite() ? mu - dom.lo : 1.0;
    double gap_hi = dom.hi_finite() ? dom.hi - mu : 1.0;
    double h = std::min({1e-4 * (1.0 + std::abs(mu)), 0.25 * gap_lo, 0.25 * gap_hi});
    double d1 = (eval(mu + h) - eval(mu - h)) / (2.0 * h);
    double d2 = (eval(mu + 0.5 * h) - eval(mu - 0.5 * h)) / h;
    double defect = std::abs(d1 - d2);
    rep.interior_probes.push_back(mu);
    rep.fd_defects.push_back(defect);
    if (defect > probes.fd_tolerance * (1.0 + std::abs(d2))) rep.differentiable = false;
  }

  // Steepness: along each approach to a finite edge the derivative magnitude
  // must clear a geometrically growing sequence of thresholds.  Unbounded
  // directions are exempt, so a function with no finite edge is vacuously
  // steep.
  rep.steep = true;
  for (const auto& seq : probes.boundary_approaches) {
    BoundaryEvidence ev;
    ev.probes = seq;
    for (double mu : seq) {
      if (!dom.interior_contains(mu))
        throw ProbeOutsideDomainError("smoothness: boundary probe outside interior, mu=" +
                                      format_double(mu));
      double gap_lo = dom.lo_finite() ? mu - dom.lo : 1.0;
      double gap_hi = dom.hi_finite() ? dom.hi - mu : 1.0;
      double h = 0.25 * std::min(gap_lo, gap_hi);
      ev.derivative_magnitudes.push_back(
          std::abs((eval(mu + h) - eval(mu - h)) / (2.0 * h)));
    }
    ev.steep = !ev.derivative_magnitudes.empty();
    double threshold = std::max(1.0, ev.derivative_magnitudes.empty()
                                         ? 1.0
                                         : ev.derivative_magnitudes.front());
    for (std::size_t k = 1; k < ev.derivative_magnitudes.size(); ++k) {
      threshold *= probes.steepness_growth;
      if (ev.derivative_magnitudes[k] < threshold * (1.0 - 1e-9)) {
        ev.steep = false;
        break;
      }
    }
    if (!ev.steep) rep.steep = false;
    rep.boundaries.push_back(std::move(ev));
  }

  rep.essentially_smooth = rep.nonempty_interior && rep.differentiable && rep.steep;
  return rep;
}

GoodnessReport check_goodness(const RateFunction& D, const std::vector<double>& levels) {
  GoodnessReport rep;
  rep.all_bounded = true;
  const DomainInterval& dom = D.domain();
  const double scan_limit = 1e9;

  auto below = [&](double a, double v) {
    ExtendedReal d = D(a);
    return d.finite() && d.value() <= v;
  };

  for (double v : levels) {
    if (v < 0) throw InvalidParametersError("check_goodness: negative level");
    LevelSetEntry entry;
    entry.level = v;

    // Seed inside the sublevel set, preferring the zero point.
    std::optional<double> seed;
    if (D.zero_point() && below(*D.zero_point(), v)) seed = *D.zero_point();
    if (!seed) {
      double lo = dom.lo_finite() ? dom.lo : -4.0;
      double hi = dom.hi_finite() ? dom.hi : 4.0;
      for (int k = 0; k <= 256 && !seed; ++k) {
        double a = lo + (hi - lo) * k / 256.0;
        if (below(a, v)) seed = a;
      }
    }
    if (!seed) {
      entry.empty = true;
      entry.bounded = true;  // the empty set is compact
      entry.note = "no point of the probe range lies at or below this level";
      rep.levels.push_back(entry);
      continue;
    }

    // Expand outward by doubling until above the level (or past the scan
    // limit, which we report as unbounded evidence).
    auto edge = [&](int sign) -> std::optional<double> {
      double inside = *seed;
      double step = 1.0;
      double outside = inside;
      while (true) {
        double candidate = inside + sign * step;
        if (sign > 0 && dom.hi_finite()) candidate = std::min(candidate, dom.hi);
        if (sign < 0 && dom.lo_finite()) candidate = std::max(candidate, dom.lo);
        if (below(candidate, v)) {
          inside = candidate;
          if ((sign > 0 && dom.hi_finite() && candidate >= dom.hi) ||
              (sign < 0 && dom.lo_finite() && candidate <= dom.lo))
            return candidate;  // sublevel set reaches the domain edge
          if (std::abs(candidate) > scan_limit) return std::nullopt;  // unbounded
          step *= 2.0;
          continue;
        }
        outside = candidate;
        break;
      }
      // Bisect the crossing between inside (<= v) and outside (> v).
      for (int i = 0; i < 200 && std::abs(outside - inside) >
                                     1e-12 * (1.0 + std::abs(inside));
           ++i) {
        double mid = 0.5 * (inside + outside);
        if (below(mid, v))
          inside = mid;
        else
          outside = mid;
      }
      return inside;
    };

    auto right = edge(+1);
    auto left = edge(-1);
    if (!right || !left) {
      entry.bounded = false;
      entry.note = "sublevel set escapes the scan limit";
      rep.all_bounded = false;
    } else {
      entry.bounded = true;
      entry.lo = *left;
      entry.hi = *right;
      if (D.grid_backed())
        entry.note = "bounded under the grid representation (infinite outside the grid)";
    }
    rep.levels.push_back(entry);
  }
  return rep;
}

}  // namespace ldp
