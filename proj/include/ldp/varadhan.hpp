#pragma once

#include <utility>
#include <vector>

#include "ldp/domain.hpp"
#include "ldp/empirical.hpp"
#include "ldp/mc_estimate.hpp"
#include "ldp/process_model.hpp"
#include "ldp/rate_function.hpp"
#include "ldp/step_law.hpp"

namespace ldp {

// Whitelisted scalar test functions for the exponential-moment limit.
// Every family is continuous and bounded above on bounded slope sets, so
// the tilted exponential moments stay finite for the shipped models.
struct PhiSpec {
  enum class Kind { Linear, QuadraticCapped, PiecewiseLinear };
  Kind kind = Kind::Linear;
  double slope = 0.0;  // linear: phi(a) = slope * a
  double coeff = 0.0;  // quadratic-capped: clamp(coeff * a^2, -cap, cap)
  double cap = 0.0;
  std::vector<std::pair<double, double>> nodes;  // piecewise-linear graph,
                                                 // constant beyond its ends

  static PhiSpec linear(double slope);
  static PhiSpec quadratic_capped(double coeff, double cap);
  static PhiSpec piecewise_linear(std::vector<std::pair<double, double>> nodes);

  void validate() const;
  double operator()(double alpha) const;
};

struct VaradhanEstimate {
  double value = 0.0;    // (1/T) ln of the reweighted sample mean of e^{T phi(Z(T)/T)}
  double std_err = 0.0;  // delta-method error on the value scale
  long n = 0;
  double tilt_mu = 0.0;      // exponential tilt the samples were drawn under
  double tilt_target = 0.0;  // slope that tilt centers on
  EstimateMethod::Kind method = EstimateMethod::Kind::Crude;
};

// Monte Carlo estimate of (1/T) ln E exp(T phi(Z(T)/T)).  The expectation
// is dominated by trajectories near the slope where phi - D peaks, which
// crude sampling essentially never produces once T is large; the tilted
// method locates that slope on a grid, samples under the matching
// exponential change of measure, and reweights, so the dominant
// trajectories carry most of the samples.
VaradhanEstimate varadhan_functional(const ProcessModel& model, const PhiSpec& phi,
                                     double T, long n, EstimateMethod::Kind method,
                                     const SampleOptions& opts);

struct VaradhanReference {
  double value = 0.0;  // max of phi - D over the window grid
  double argmax = 0.0;
};

// Grid maximization of phi - D over a finite window (typically the
// reachable slope range, clipped when unbounded).  Grid points where D is
// infinite are skipped; ties resolve to the leftmost point.
VaradhanReference varadhan_reference(const PhiSpec& phi, const RateFunction& D,
                                     const DomainInterval& window,
                                     int grid_points = 2001);

// The slope window varadhan_functional scans for its tilt: the reachable
// slope range, unbounded ends clipped forty step standard deviations from
// the step mean.
DomainInterval varadhan_window(const StepLaw& law);

}  // namespace ldp
