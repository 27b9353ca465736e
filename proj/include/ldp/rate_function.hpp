#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldp/domain.hpp"
#include "ldp/extended_real.hpp"

namespace ldp {

// Convex nonnegative rate function D: R -> [0, +inf].  Two representations:
//   * grid: strictly increasing abscissae with extended-real values,
//     piecewise-linear between finite neighbors, +infinity outside the
//     contiguous finite range (a deliberate convention: the grid is the
//     domain of knowledge);
//   * closed form: an evaluator over a queryable domain, +infinity outside.
class RateFunction {
 public:
  static RateFunction closed_form(std::string label, DomainInterval dom,
                                  std::function<double(double)> eval,
                                  std::optional<double> zero_point = {});
  static RateFunction from_grid(std::string label, std::vector<double> alphas,
                                std::vector<ExtendedReal> values,
                                std::optional<double> zero_point = {});

  ExtendedReal operator()(double alpha) const;
  const DomainInterval& domain() const { return dom_; }
  // Point where D vanishes (the law-of-large-numbers center), when known.
  std::optional<double> zero_point() const { return zero_point_; }
  const std::string& label() const { return label_; }

  bool grid_backed() const { return grid_; }
  const std::vector<double>& grid_alphas() const { return alphas_; }
  const std::vector<ExtendedReal>& grid_values() const { return values_; }

  // Bundled closed forms (conjugates of the bundled function families).
  static RateFunction quadratic(double mean = 0.0, double sigma = 1.0);
  static RateFunction binary_entropy();            // conjugate of ln cosh
  static RateFunction exponential_rate(double rate);
  static RateFunction poisson_rate(double rate);
  static RateFunction indicator_at(double a);      // 0 at a, +inf elsewhere

 private:
  RateFunction() = default;

  std::string label_;
  DomainInterval dom_;
  std::optional<double> zero_point_;
  bool grid_ = false;
  std::function<double(double)> eval_;     // closed form
  std::vector<double> alphas_;             // grid
  std::vector<ExtendedReal> values_;
  std::size_t first_finite_ = 0, last_finite_ = 0;
};

}  // namespace ldp
