#pragma once

#include <cstddef>
#include <vector>

namespace ldp {

// Time partition 0 = s_0 < s_1 < ... < s_K = 1.  Points closer than 1e-12 to
// an existing point are rejected on construction and silently dropped when
// merging, so weights never degenerate; the endpoints are pinned exactly.
class Partition {
 public:
  explicit Partition(std::vector<double> points);

  static Partition uniform(std::size_t segments);
  static Partition dyadic(int level);  // 2^level segments

  // New partition also containing the given interior points (near-duplicates
  // dropped); the result refines *this.
  Partition merged_with(const std::vector<double>& extra) const;

  std::size_t segments() const { return points_.size() - 1; }
  double point(std::size_t k) const { return points_[k]; }
  double weight(std::size_t k) const { return points_[k + 1] - points_[k]; }
  const std::vector<double>& points() const { return points_; }

  bool refines(const Partition& coarser) const;

  static constexpr double kMinGap = 1e-12;

 private:
  std::vector<double> points_;
};

}  // namespace ldp
