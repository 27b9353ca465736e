#pragma once

#include <optional>
#include <vector>

#include "ldp/cadlag_path.hpp"
#include "ldp/empirical.hpp"
#include "ldp/epsilon_schedule.hpp"
#include "ldp/mc_estimate.hpp"
#include "ldp/partition.hpp"
#include "ldp/process_model.hpp"

namespace ldp {

// Probability that the normalized increment (Z(T) - Z(0)) / T lands in the
// open window of half-width eps(T) around beta.  The tilted method samples
// steps under the exponential change of measure centered on beta and
// reweights each hit by the likelihood ratio, which leaves the estimate
// unbiased while concentrating samples where the window is.  A target on
// the closed edge of the reachable slope range is sampled at a proxy slope
// pulled half a window inside (recorded on the method tag); the estimated
// event is unchanged.
//
// Crude sampling works for walk and renewal models; tilting requires a
// per-step law.  Crude zero hits throw ZeroHitsError (the estimate would
// carry no rate information); tilted zero hits return the zero-hit marker
// estimate with the rule-of-three bound filled in.
MCEstimate estimate_local(const ProcessModel& model, double beta, double T,
                          const EpsilonSchedule& eps, long n,
                          EstimateMethod::Kind method,
                          std::optional<Conditioning> conditioning,
                          const SampleOptions& opts);

// Joint window event over the increments of consecutive horizon segments:
// with boundary times t_k = s_k T taken from the partition, every
// normalized segment increment (Z(t_k) - Z(t_{k-1})) / (t_k - t_{k-1})
// must land within eps(T) of betas[k].  A one-segment partition reproduces
// estimate_local draw for draw.  The tilted method tilts each segment
// toward its own target and multiplies the segment likelihood ratios.
MCEstimate estimate_fdd(const ProcessModel& model, const Partition& p,
                        const std::vector<double>& betas, double T,
                        const EpsilonSchedule& eps, long n,
                        EstimateMethod::Kind method, const SampleOptions& opts);

// Tube event around a piecewise-linear profile: the rescaled trajectory
// z(s) = Z(sT) / T, observed on the unit-time grid, must stay within
// eps(T) of f in uniform norm.  Requires a walk model (the trajectory is
// rebuilt from its steps); the tilted method tilts each inter-node stretch
// of f toward that stretch's slope, the flat continuation past the last
// node included.  The initial value comes from the model's own initial
// law, so a profile starting far from the model honestly estimates a
// near-impossible event.
MCEstimate estimate_functional(const ProcessModel& model, const CadlagPath& f,
                               double T, const EpsilonSchedule& eps, long n,
                               EstimateMethod::Kind method,
                               const SampleOptions& opts);

// Folds the log likelihood-ratio weights of the hitting samples into an
// estimate: log-sum-exp for the first and second weight moments, standard
// error assembled in log space so estimates far below the underflow line
// keep a meaningful error bar.  Crude zero hits throw ZeroHitsError;
// tilted zero hits produce the marker estimate.
MCEstimate reduce_hits(const std::vector<double>& hit_log_weights, long n,
                       double T, double eps, EstimateMethod method);

}  // namespace ldp
