#pragma once

#include <utility>
#include <vector>

namespace ldp {

// Right-continuous path with left limits on [0, 1].  Three constructions:
//   * piecewise_linear: continuous, linear between nodes;
//   * step: piecewise constant, jumping to a new level at each abscissa;
//   * sampled: grid samples held constant until the next sample (so a
//     sampled path is treated as a step path, a deliberate convention).
// Abscissae are strictly increasing, start at exactly 0, and live in [0, 1];
// beyond the last abscissa the path continues at its final slope-zero level
// (piecewise linear: final node value).
class CadlagPath {
 public:
  enum class Kind { PiecewiseLinear, Step, Sampled };

  static CadlagPath piecewise_linear(std::vector<std::pair<double, double>> nodes);
  static CadlagPath step(std::vector<std::pair<double, double>> jumps);
  static CadlagPath sampled(std::vector<std::pair<double, double>> samples);
  static CadlagPath constant(double level);

  double value(double s) const;
  double left_limit(double s) const;  // s in (0, 1]
  Kind kind() const { return kind_; }
  bool continuous() const { return kind_ == Kind::PiecewiseLinear; }
  const std::vector<double>& abscissae() const { return s_; }
  const std::vector<double>& levels() const { return v_; }

 private:
  CadlagPath(Kind kind, std::vector<double> s, std::vector<double> v);

  Kind kind_;
  std::vector<double> s_;
  std::vector<double> v_;
};

// Exact uniform distance between two paths of the kinds above: both are
// linear between the merged abscissae, so the supremum is attained at a
// merged point or as a left limit there.
double uniform_norm_distance(const CadlagPath& f, const CadlagPath& g);

}  // namespace ldp
