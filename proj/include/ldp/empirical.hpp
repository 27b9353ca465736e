#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldp/process_model.hpp"
#include "ldp/simulate.hpp"

namespace ldp {

// Seed and worker-count plumbing shared by all sampling routines.  Results
// depend on the seed only, never on the worker count.
struct SampleOptions {
  std::uint64_t seed = 0;
  int workers = 1;  // 0 = hardware default
};

// Initial-value conditioning: Z(0) uniform on ((alpha - eta) T, (alpha + eta) T).
struct Conditioning {
  double alpha = 0.0;
  double eta = 0.0;
};

struct CgfEstimate {
  double value = 0.0;    // (1/T) ln of the empirical exponential moment
  double std_err = 0.0;  // delta-method error on the same scale
  long n = 0;
};

// (1/T) ln (1/n) sum_i exp(mu (Z_i(T) - alpha T)), accumulated with
// max-subtraction.  alpha is 0 unconditioned; with conditioning the initial
// law is the stated band and alpha recenters the exponent.
CgfEstimate empirical_cgf(const ProcessModel& model, double mu, double T, long n,
                          std::optional<Conditioning> conditioning,
                          const SampleOptions& opts);

struct ConditionAEntry {
  double mu = 0.0, T = 0.0;
  double empirical = 0.0, analytic = 0.0, std_err = 0.0;
  double allowed = 0.0;  // |mu| eta + slack + 3 std_err
  bool pass = false;
};

struct ConditionAReport {
  std::vector<ConditionAEntry> entries;
  bool all_pass = false;
  double worst_gap = 0.0;
};

// Uniform closeness of the empirical normalized log moment curve to the
// analytic limit over a probe grid, under optional band conditioning.
ConditionAReport check_condition_A(const ProcessModel& model,
                                   const std::vector<double>& mu_grid,
                                   const std::vector<double>& T_grid, long n,
                                   std::optional<Conditioning> conditioning,
                                   double slack, const SampleOptions& opts);

// Oscillation budget sup|Z(uT) - Z(vT)| <= V(T) + W(delta) T over |u - v| <= delta.
struct OscillationBudget {
  std::function<double(double)> V;  // of T
  std::function<double(double)> W;  // of delta
  static OscillationBudget almost_lipschitz(double gamma0, double gamma1);
};

struct ConditionBEntry {
  double delta = 0.0;
  double sup_osc = 0.0;
  double bound = 0.0;
  bool pass = false;
  double u_arg = 0.0, v_arg = 0.0;  // rescaled times attaining the supremum
};

struct ConditionBReport {
  std::vector<ConditionBEntry> entries;
  bool all_pass = false;
};

// Checks the oscillation bound on one simulated trajectory for each delta.
// delta * T must cover at least one grid gap.
ConditionBReport check_condition_B(const Trajectory& traj, const OscillationBudget& budget,
                                   const std::vector<double>& delta_grid);

}  // namespace ldp
