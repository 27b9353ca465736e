#pragma once

#include <vector>

#include "ldp/fundamental_function.hpp"
#include "ldp/rate_function.hpp"

namespace ldp {

// Budget for the one-dimensional concave maximization behind conjugation.
// The bracket is intersected with the function's domain (open endpoints are
// approached, never touched).  When the objective is still climbing at the
// edge of an unbounded domain side with slope above `divergence_slope`, the
// supremum is declared +infinity.
struct SearchSpec {
  double mu_lo = -30.0;
  double mu_hi = 30.0;
  int iterations = 160;
  double divergence_slope = 1e-6;
};

// sup_mu { alpha * mu - A(mu) } for a single alpha.
ExtendedReal conjugate_point(const FundamentalFunction& A, double alpha,
                             const SearchSpec& spec = {});

// Conjugate of A sampled on a strictly increasing alpha grid.  Requires a
// domain with nonempty interior and a convex input (spot-checked on probe
// triples).  The zero point is A'(0) when 0 is interior.
RateFunction legendre_transform(const FundamentalFunction& A,
                                const std::vector<double>& alpha_grid,
                                const SearchSpec& spec = {});

// Conjugate of a rate function, evaluated on mu_grid and returned as a
// table-backed function over the contiguous range where it is finite.
FundamentalFunction biconjugate(const RateFunction& D, const std::vector<double>& mu_grid,
                                const SearchSpec& spec = {});

// sup_alpha { mu * alpha - D(alpha) } for a single mu.
ExtendedReal conjugate_of_rate_point(const RateFunction& D, double mu,
                                     const SearchSpec& spec = {});

}  // namespace ldp
