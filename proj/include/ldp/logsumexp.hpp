#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace ldp {

// ln(sum exp(x_i)) with max-subtraction.  Entries equal to -infinity are
// log-space zeros and are skipped; an empty (or all-zero) sum returns
// -infinity.  This is the only place a -inf double is accepted, and only as
// the conventional log of zero on input.
inline double log_sum_exp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs)
    if (x > m) m = x;
  if (!std::isfinite(m)) return -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (double x : xs)
    if (x > -std::numeric_limits<double>::infinity()) s += std::exp(x - m);
  return m + std::log(s);
}

// ln(1 - exp(x)) for x <= 0, stable near both ends.
inline double log1m_exp(double x) {
  if (x >= 0.0) return -std::numeric_limits<double>::infinity();
  if (x > -0.6931471805599453)  // ln 2
    return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

}  // namespace ldp
