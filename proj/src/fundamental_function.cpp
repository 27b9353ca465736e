#include "ldp/fundamental_function.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ldp/csv.hpp"
#include "ldp/errors.hpp"

namespace ldp {

FundamentalFunction::FundamentalFunction(std::string label, DomainInterval dom,
                                         std::function<double(double)> eval,
                                         std::function<double(double)> deriv)
    : label_(std::move(label)), dom_(dom), eval_(std::move(eval)), deriv_(std::move(deriv)) {
  if (!eval_) throw InvalidParametersError("FundamentalFunction: null evaluator");
  if (dom_.lo > dom_.hi) throw InvalidParametersError("FundamentalFunction: inverted domain");
}

ExtendedReal FundamentalFunction::operator()(double mu) const {
  if (!dom_.contains(mu)) return ExtendedReal::infinity();
  return ExtendedReal(eval_(mu));
}

double FundamentalFunction::derivative(double mu) const {
  if (!dom_.interior_contains(mu))
    throw ProbeOutsideDomainError("derivative: probe not interior at mu=" + format_double(mu));
  if (deriv_) return deriv_(mu);
  double gap_lo = dom_.lo_finite() ? mu - dom_.lo : 1.0;
  double gap_hi = dom_.hi_finite() ? dom_.hi - mu : 1.0;
  double h = std::min({1e-6 * (1.0 + std::abs(mu)), 0.25 * gap_lo, 0.25 * gap_hi});
  return (eval_(mu + h) - eval_(mu - h)) / (2.0 * h);
}

FundamentalFunction FundamentalFunction::gaussian(double mean, double sigma) {
  if (sigma <= 0) throw InvalidParametersError("gaussian: sigma must be positive");
  return FundamentalFunction(
      "gaussian", DomainInterval::all(),
      [mean, sigma](double mu) { return mean * mu + 0.5 * sigma * sigma * mu * mu; },
      [mean, sigma](double mu) { return mean + sigma * sigma * mu; });
}

FundamentalFunction FundamentalFunction::rademacher() {
  // ln cosh, written to avoid overflow for large |mu|.
  auto eval = [](double mu) {
    double a = std::abs(mu);
    return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453;
  };
  return FundamentalFunction("rademacher", DomainInterval::all(), eval,
                             [](double mu) { return std::tanh(mu); });
}

FundamentalFunction FundamentalFunction::poisson(double rate) {
  if (rate <= 0) throw InvalidParametersError("poisson: rate must be positive");
  return FundamentalFunction(
      "poisson", DomainInterval::all(),
      [rate](double mu) { return rate * std::expm1(mu); },
      [rate](double mu) { return rate * std::exp(mu); });
}

FundamentalFunction FundamentalFunction::exponential(double rate) {
  if (rate <= 0) throw InvalidParametersError("exponential: rate must be positive");
  DomainInterval dom;
  dom.hi = rate;
  dom.hi_closed = false;
  return FundamentalFunction(
      "exponential", dom,
      [rate](double mu) { return -std::log1p(-mu / rate); },
      [rate](double mu) { return 1.0 / (rate - mu); });
}

FundamentalFunction FundamentalFunction::table(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw InvalidParametersError("table: need at least 2 points");
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].first <= points[i - 1].first)
      throw InvalidParametersError("table: duplicate mu abscissa");
  for (auto& [m, a] : points)
    if (!std::isfinite(m) || !std::isfinite(a))
      throw InvalidParametersError("table: non-finite entry");
  DomainInterval dom = DomainInterval::closed(points.front().first, points.back().first);
  auto shared = std::make_shared<std::vector<std::pair<double, double>>>(std::move(points));
  auto eval = [shared](double mu) {
    const auto& pts = *shared;
    auto it = std::lower_bound(pts.begin(), pts.end(), mu,
                               [](const auto& p, double x) { return p.first < x; });
    if (it != pts.end() && it->first == mu) return it->second;
    auto hi = it;
    auto lo = std::prev(it);
    double t = (mu - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
  };
  return FundamentalFunction("table", dom, eval);
}

FundamentalFunction FundamentalFunction::table_from_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  if (t.header.size() != 2 || t.header[0] != "mu" || t.header[1] != "A")
    throw InvalidParametersError("table csv: expected header 'mu,A' in " + path);
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : t.rows) {
    if (row.size() != 2) throw InvalidParametersError("table csv: bad row in " + path);
    pts.emplace_back(parse_double(row[0]), parse_double(row[1]));
  }
  return table(std::move(pts));
}

namespace {
double param(const FunctionSpec& s, const std::string& key, double fallback) {
  auto it = s.parameters.find(key);
  return it == s.parameters.end() ? fallback : it->second;
}
}  // namespace

FundamentalFunction FundamentalFunction::from_spec(const FunctionSpec& spec) {
  FundamentalFunction f = [&] {
    if (spec.family == "gaussian")
      return gaussian(param(spec, "mean", 0.0), param(spec, "sigma", 1.0));
    if (spec.family == "rademacher") return rademacher();
    if (spec.family == "poisson") return poisson(param(spec, "rate", 1.0));
    if (spec.family == "exponential") return exponential(param(spec, "rate", 1.0));
    if (spec.family == "table") {
      if (!spec.table_points.empty()) return table(spec.table_points);
      throw InvalidParametersError("table spec: no points supplied");
    }
    throw UnknownFamilyError("unknown function family '" + spec.family + "'");
  }();
  if (spec.domain) {
    DomainInterval d = *spec.domain;
    const DomainInterval base = f.domain();
    d.lo = std::max(d.lo, base.lo);
    d.hi = std::min(d.hi, base.hi);
    if (d.lo == base.lo) d.lo_closed = base.lo_closed && d.lo_closed;
    if (d.hi == base.hi) d.hi_closed = base.hi_closed && d.hi_closed;
    if (d.lo > d.hi) throw InvalidParametersError("from_spec: empty restricted domain");
    return FundamentalFunction(f.label_, d, f.eval_, f.deriv_);
  }
  return f;
}

}  // namespace ldp
