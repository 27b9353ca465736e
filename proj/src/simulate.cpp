#include "ldp/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"
#include "ldp/rng.hpp"

namespace ldp {

Trajectory simulate(const ProcessModel& model, double T, double grid_step,
                    std::uint64_t seed) {
  if (!(T > 0.0) || !(grid_step > 0.0))
    throw InvalidParametersError("simulate: T and grid_step must be positive");
  double ratio = T / grid_step;
  auto m = static_cast<long long>(std::llround(ratio));
  if (m < 1 || std::abs(static_cast<double>(m) * grid_step - T) > 1e-9 * std::max(1.0, T))
    throw InvalidParametersError("simulate: grid_step must divide T (T=" +
                                 format_double(T) + ", grid_step=" +
                                 format_double(grid_step) + ")");

  Trajectory traj;
  traj.horizon = T;
  traj.seed = seed;
  traj.times.resize(static_cast<std::size_t>(m) + 1);
  for (long long i = 0; i <= m; ++i)
    traj.times[static_cast<std::size_t>(i)] = static_cast<double>(i) * grid_step;
  traj.times.back() = T;  // pin the endpoint exactly

  std::mt19937_64 core_rng = make_stream(seed, 0);
  std::mt19937_64 noise_rng = make_stream(seed, 1);
  double z0 = model.draw_initial(T, core_rng);
  traj.values.assign(traj.times.size(), z0);

  if (const auto* w = model.walk()) {
    // One step at each integer time.
    long long total_steps = static_cast<long long>(std::floor(T + 1e-9));
    long long done = 0;
    double z = z0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      auto due = static_cast<long long>(std::floor(traj.times[i] + 1e-9));
      due = std::min(due, total_steps);
      while (done < due) {
        z += w->steps.sample(core_rng);
        ++done;
      }
      traj.values[i] = z;
    }
  } else {
    const auto* r = model.renewal();
    std::vector<double> arrival_times;
    std::vector<double> cumulative;
    double t = 0.0, z = z0;
    while (true) {
      double gap = r->interarrival.kind == Interarrival::Kind::Exponential
                       ? -std::log1p(-uniform01(core_rng)) / r->interarrival.param
                       : r->interarrival.param;
      t += gap;
      if (t > T) break;
      z += r->jumps.sample(core_rng);
      arrival_times.push_back(t);
      cumulative.push_back(z);
    }
    std::size_t next = 0;
    double current = z0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      while (next < arrival_times.size() && arrival_times[next] <= traj.times[i] + 1e-9) {
        current = cumulative[next];
        ++next;
      }
      traj.values[i] = current;
    }
  }

  if (model.noise()) {
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      traj.values[i] += model.noise_at(traj.times[i], noise_rng);
  }
  return traj;
}

CadlagPath rescale(const Trajectory& traj) {
  if (traj.times.empty() || !(traj.horizon > 0.0))
    throw InvalidParametersError("rescale: empty trajectory");
  std::vector<std::pair<double, double>> samples;
  samples.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    double s = traj.times[i] / traj.horizon;
    if (i + 1 == traj.times.size()) s = 1.0;
    samples.emplace_back(s, traj.values[i] / traj.horizon);
  }
  samples.front().first = 0.0;
  return CadlagPath::sampled(std::move(samples));
}

}  // namespace ldp
