#pragma once

#include <string>
#include <vector>

#include "ldp/extended_real.hpp"

namespace ldp {

struct EstimateMethod {
  enum class Kind { Crude, Tilted };
  Kind kind = Kind::Crude;
  std::vector<double> tilts;  // per segment for the tilted method
  bool boundary_proxy = false;  // some tilt was pulled inside from a boundary target

  std::string str() const {
    if (kind == Kind::Crude) return "crude";
    std::string s = "tilted(";
    for (std::size_t i = 0; i < tilts.size(); ++i) {
      if (i) s += ";";
      s += std::to_string(tilts[i]);
    }
    s += ")";
    if (boundary_proxy) s += "*";
    return s;
  }
};

// Probability estimate carried in both linear and log scale.  A zero-hit
// outcome keeps p_hat = 0 with an infinite log_rate marker and the
// rule-of-three ceiling 3/n as the only usable information.
struct MCEstimate {
  double p_hat = 0.0;
  double log_p = 0.0;       // ln p_hat; meaningful only when !zero_hits
  ExtendedReal log_rate;    // -ln(p_hat) / T, +infinity marker on zero hits
  long n = 0;
  double std_err = 0.0;
  EstimateMethod method;
  bool zero_hits = false;
  double rule_of_three = 0.0;  // 3/n upper bound, filled when zero_hits
  double T = 0.0;
  double eps = 0.0;
};

}  // namespace ldp
