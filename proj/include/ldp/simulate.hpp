#pragma once

#include <cstdint>
#include <vector>

#include "ldp/cadlag_path.hpp"
#include "ldp/process_model.hpp"

namespace ldp {

struct Trajectory {
  std::vector<double> times;   // 0 = t_0 < ... < t_m = T
  std::vector<double> values;  // Z(t_i)
  double horizon = 0.0;
  std::uint64_t seed = 0;
};

// One trajectory observed on the uniform grid {0, grid_step, ..., T}.
// grid_step must divide T within 1e-9 relative rounding.  The same
// (model, T, grid_step, seed) always reproduces the same trajectory.
Trajectory simulate(const ProcessModel& model, double T, double grid_step,
                    std::uint64_t seed);

// Time is mapped to [0, 1] and space divided by T: the rescaled sample path
// z(s) = Z(sT) / T as a sampled (piecewise-constant) cadlag path.
CadlagPath rescale(const Trajectory& traj);

}  // namespace ldp
