#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldp {

// Value on the extended half-line (-inf, +inf]: a finite double or a +infinity
// tag.  All arithmetic goes through this wrapper so that no bare sentinel
// float ever participates in a computation.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : v_(v), inf_(false) {}

  static constexpr ExtendedReal infinity() {
    ExtendedReal e;
    e.inf_ = true;
    return e;
  }

  constexpr bool finite() const { return !inf_; }
  constexpr bool infinite() const { return inf_; }

  double value() const {
    if (inf_) throw std::logic_error("ExtendedReal: value() on infinity");
    return v_;
  }

  constexpr double value_or(double fallback) const { return inf_ ? fallback : v_; }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtendedReal(a.v_ + b.v_);
  }

  ExtendedReal& operator+=(ExtendedReal o) {
    *this = *this + o;
    return *this;
  }

  // Scale by a nonnegative weight; the convex-analysis convention 0 * inf = 0
  // applies so that zero-length pieces never contribute.
  friend ExtendedReal scale(double c, ExtendedReal x) {
    if (c < 0.0) throw std::logic_error("ExtendedReal: negative scale");
    if (c == 0.0) return ExtendedReal(0.0);
    if (x.inf_) return infinity();
    return ExtendedReal(c * x.v_);
  }

  friend bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.v_ == b.v_;
  }
  friend bool operator!=(ExtendedReal a, ExtendedReal b) { return !(a == b); }
  friend bool operator<(ExtendedReal a, ExtendedReal b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return b < a; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return !(b < a); }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return !(a < b); }

  friend ExtendedReal max(ExtendedReal a, ExtendedReal b) { return a < b ? b : a; }

  std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

 private:
  double v_ = 0.0;
  bool inf_ = false;
};

}  // namespace ldp
