#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldp/domain.hpp"
#include "ldp/extended_real.hpp"

namespace ldp {

// Declarative description of a scaled cumulant generating function, the
// normalized log moment generating limit that drives every rate computation
// here.  `family` picks a bundled closed form; `table` interpolates data.
struct FunctionSpec {
  std::string family;  // gaussian | rademacher | poisson | exponential | table
  std::map<std::string, double> parameters;
  std::optional<DomainInterval> domain;  // optional restriction
  std::vector<std::pair<double, double>> table_points;  // for family == table
};

// Convex function A: dom A -> R, extended by +infinity outside its domain.
// Evaluation at a finite closed boundary uses the supplied values; an open
// boundary is outside the domain.
class FundamentalFunction {
 public:
  FundamentalFunction(std::string label, DomainInterval dom,
                      std::function<double(double)> eval,
                      std::function<double(double)> deriv = nullptr);

  ExtendedReal operator()(double mu) const;
  const DomainInterval& domain() const { return dom_; }
  bool has_derivative() const { return static_cast<bool>(deriv_); }
  // Derivative at an interior point (analytic when available, else a central
  // finite difference).
  double derivative(double mu) const;
  const std::string& label() const { return label_; }

  static FundamentalFunction gaussian(double mean = 0.0, double sigma = 1.0);
  static FundamentalFunction rademacher();
  static FundamentalFunction poisson(double rate);
  static FundamentalFunction exponential(double rate);
  // Piecewise-linear interpolation of (mu, A) samples; closed endpoints.
  static FundamentalFunction table(std::vector<std::pair<double, double>> points);
  static FundamentalFunction table_from_csv(const std::string& path);
  static FundamentalFunction from_spec(const FunctionSpec& spec);

 private:
  std::string label_;
  DomainInterval dom_;
  std::function<double(double)> eval_;
  std::function<double(double)> deriv_;
};

}  // namespace ldp
