#include "ldp/cadlag_path.hpp"

#include <algorithm>
#include <cmath>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"

namespace ldp {

CadlagPath::CadlagPath(Kind kind, std::vector<double> s, std::vector<double> v)
    : kind_(kind), s_(std::move(s)), v_(std::move(v)) {
  if (s_.empty() || s_.size() != v_.size())
    throw InvalidParametersError("CadlagPath: empty or mismatched node arrays");
  if (s_.front() != 0.0)
    throw InvalidParametersError("CadlagPath: first abscissa must be exactly 0");
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (!std::isfinite(s_[i]) || !std::isfinite(v_[i]))
      throw InvalidParametersError("CadlagPath: non-finite node");
    if (s_[i] < 0.0 || s_[i] > 1.0)
      throw InvalidParametersError("CadlagPath: abscissa outside [0,1]");
    if (i > 0 && !(s_[i] > s_[i - 1]))
      throw InvalidParametersError("CadlagPath: abscissae not strictly increasing");
  }
}

namespace {
std::pair<std::vector<double>, std::vector<double>> split(
    std::vector<std::pair<double, double>> nodes) {
  std::vector<double> s, v;
  s.reserve(nodes.size());
  v.reserve(nodes.size());
  for (auto& [a, b] : nodes) {
    s.push_back(a);
    v.push_back(b);
  }
  return {std::move(s), std::move(v)};
}
}  // namespace

CadlagPath CadlagPath::piecewise_linear(std::vector<std::pair<double, double>> nodes) {
  auto [s, v] = split(std::move(nodes));
  return CadlagPath(Kind::PiecewiseLinear, std::move(s), std::move(v));
}

CadlagPath CadlagPath::step(std::vector<std::pair<double, double>> jumps) {
  auto [s, v] = split(std::move(jumps));
  return CadlagPath(Kind::Step, std::move(s), std::move(v));
}

CadlagPath CadlagPath::sampled(std::vector<std::pair<double, double>> samples) {
  auto [s, v] = split(std::move(samples));
  return CadlagPath(Kind::Sampled, std::move(s), std::move(v));
}

CadlagPath CadlagPath::constant(double level) {
  return CadlagPath(Kind::PiecewiseLinear, {0.0}, {level});
}

double CadlagPath::value(double s) const {
  if (s < 0.0 || s > 1.0)
    throw InvalidParametersError("CadlagPath::value: s outside [0,1]");
  auto it = std::upper_bound(s_.begin(), s_.end(), s);
  std::size_t idx = static_cast<std::size_t>(it - s_.begin()) - 1;  // s_[idx] <= s
  if (kind_ != Kind::PiecewiseLinear) return v_[idx];
  if (s == s_[idx] || idx + 1 >= s_.size()) return v_[idx];
  double t = (s - s_[idx]) / (s_[idx + 1] - s_[idx]);
  return v_[idx] + t * (v_[idx + 1] - v_[idx]);
}

double CadlagPath::left_limit(double s) const {
  if (s <= 0.0 || s > 1.0)
    throw InvalidParametersError("CadlagPath::left_limit: s outside (0,1]");
  if (kind_ == Kind::PiecewiseLinear) return value(s);  // continuous
  auto it = std::lower_bound(s_.begin(), s_.end(), s);
  if (it != s_.end() && *it == s) {
    std::size_t idx = static_cast<std::size_t>(it - s_.begin());
    return v_[idx - 1];  // idx >= 1 because s > 0 = s_.front()
  }
  std::size_t idx = static_cast<std::size_t>(it - s_.begin()) - 1;
  return v_[idx];
}

double uniform_norm_distance(const CadlagPath& f, const CadlagPath& g) {
  std::vector<double> pts;
  pts.reserve(f.abscissae().size() + g.abscissae().size() + 1);
  pts.insert(pts.end(), f.abscissae().begin(), f.abscissae().end());
  pts.insert(pts.end(), g.abscissae().begin(), g.abscissae().end());
  pts.push_back(1.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  double best = 0.0;
  for (double s : pts) {
    best = std::max(best, std::abs(f.value(s) - g.value(s)));
    if (s > 0.0) best = std::max(best, std::abs(f.left_limit(s) - g.left_limit(s)));
  }
  return best;
}

}  // namespace ldp
