#pragma once

#include <vector>

#include "ldp/empirical.hpp"
#include "ldp/extended_real.hpp"
#include "ldp/process_model.hpp"

namespace ldp {

// One scanned threshold: the two one-sided decay-rate bounds for the tail
// events {Z(T)/T >= v} and {Z(T)/T <= -v}, from the optimized exponential
// bound (valid at every horizon), and their minimum, which bounds the decay
// of P(|Z(T)/T| >= v).
struct TightnessProbe {
  double v = 0.0;
  ExtendedReal rate_up;
  ExtendedReal rate_down;
  ExtendedReal achieved;
  bool pass = false;
};

struct TightnessEntry {
  double N = 0.0;
  double v = 0.0;  // smallest scanned threshold reaching decay rate N
  ExtendedReal achieved;
  std::vector<TightnessProbe> probes;  // scan trail up to and including v

  // Simulation cross-check at the chosen v and the largest horizon: a
  // tilted two-sided tail estimate.  Zero hits across both tails leave the
  // infinite marker (consistent with an event of vanishing probability).
  bool mc_zero_hits = false;
  ExtendedReal mc_log_rate;
  double mc_p_hat = 0.0;
  long mc_n = 0;
};

struct TightnessReport {
  std::vector<TightnessEntry> entries;
  double T_star = 0.0;  // horizon used for the simulation cross-check
};

// For each decay target N, scans increasing thresholds v and certifies the
// first one whose two-sided decay-rate bound reaches N, attaching the
// simulation cross-check.  Requires a walk model (the bound optimizes over
// exponential tilts of the per-step law).  Throws ScanExhaustedError when
// some target is reached by no scanned threshold.
TightnessReport exponential_tightness_scan(const ProcessModel& model,
                                           const std::vector<double>& N_targets,
                                           const std::vector<double>& T_grid, long n,
                                           const SampleOptions& opts);

}  // namespace ldp
