#pragma once

#include <limits>

namespace ldp {

// Interval of definition for a convex function.  Bounds may be +-infinity
// (stored as IEEE infinities, used only for comparisons, never arithmetic);
// each finite bound carries an open/closed flag.
struct DomainInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  static DomainInterval all() { return {}; }
  static DomainInterval open(double a, double b) { return {a, b, false, false}; }
  static DomainInterval closed(double a, double b) { return {a, b, true, true}; }
  static DomainInterval left_open(double a, double b) { return {a, b, false, true}; }
  static DomainInterval right_open(double a, double b) { return {a, b, true, false}; }
  static DomainInterval point(double a) { return {a, a, true, true}; }

  bool lo_finite() const { return lo > -std::numeric_limits<double>::infinity(); }
  bool hi_finite() const { return hi < std::numeric_limits<double>::infinity(); }

  bool contains(double x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }

  bool interior_contains(double x) const { return x > lo && x < hi; }

  bool interior_nonempty() const { return lo < hi; }

  // Largest closed sub-interval usable as a numeric search bracket: open
  // finite endpoints are pulled inward by a relative margin.
  double bracket_lo(double margin = 1e-12) const {
    if (!lo_finite()) return lo;
    if (lo_closed) return lo;
    double width = hi_finite() ? hi - lo : 1.0;
    return lo + margin * (width > 0 ? width : 1.0);
  }
  double bracket_hi(double margin = 1e-12) const {
    if (!hi_finite()) return hi;
    if (hi_closed) return hi;
    double width = lo_finite() ? hi - lo : 1.0;
    return hi - margin * (width > 0 ? width : 1.0);
  }
};

}  // namespace ldp
