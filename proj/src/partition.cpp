#include "ldp/partition.hpp"

#include <algorithm>
#include <cmath>

#include "ldp/errors.hpp"

namespace ldp {

Partition::Partition(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2)
    throw InvalidParametersError("Partition: need at least the two endpoints");
  if (points_.front() != 0.0 || points_.back() != 1.0)
    throw InvalidParametersError("Partition: endpoints must be exactly 0 and 1");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i - 1]) || !std::isfinite(points_[i]))
      throw InvalidParametersError("Partition: non-finite point");
    if (points_[i] - points_[i - 1] < kMinGap)
      throw InvalidParametersError("Partition: points closer than the minimum gap");
  }
}

Partition Partition::uniform(std::size_t segments) {
  if (segments == 0) throw InvalidParametersError("Partition: zero segments");
  std::vector<double> pts(segments + 1);
  for (std::size_t k = 0; k <= segments; ++k)
    pts[k] = static_cast<double>(k) / static_cast<double>(segments);
  pts.back() = 1.0;
  return Partition(std::move(pts));
}

Partition Partition::dyadic(int level) {
  if (level < 0 || level > 30) throw InvalidParametersError("Partition: bad dyadic level");
  return uniform(static_cast<std::size_t>(1) << level);
}

Partition Partition::merged_with(const std::vector<double>& extra) const {
  std::vector<double> all = points_;
  for (double x : extra) {
    if (!(x > 0.0) || !(x < 1.0)) continue;  // endpoints already present
    // Existing points win: drop an extra that crowds one, so the result
    // always refines *this.
    auto it = std::lower_bound(points_.begin(), points_.end(), x);
    if (it != points_.end() && *it - x < kMinGap) continue;
    if (it != points_.begin() && x - *std::prev(it) < kMinGap) continue;
    all.push_back(x);
  }
  std::sort(all.begin(), all.end());
  std::vector<double> kept;
  kept.reserve(all.size());
  kept.push_back(0.0);
  for (double x : all) {
    if (x - kept.back() < kMinGap) continue;
    if (1.0 - x < kMinGap) continue;
    kept.push_back(x);
  }
  kept.push_back(1.0);
  return Partition(std::move(kept));
}

bool Partition::refines(const Partition& coarser) const {
  return std::includes(points_.begin(), points_.end(), coarser.points_.begin(),
                       coarser.points_.end());
}

}  // namespace ldp
