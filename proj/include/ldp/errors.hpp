#pragma once

#include <stdexcept>
#include <string>

namespace ldp {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyDomainError : Error {
  explicit EmptyDomainError(const std::string& w) : Error(w) {}
};

struct NonConvexInputError : Error {
  explicit NonConvexInputError(const std::string& w) : Error(w) {}
};

struct ProbeOutsideDomainError : Error {
  explicit ProbeOutsideDomainError(const std::string& w) : Error(w) {}
};

struct DegenerateIntervalError : Error {
  explicit DegenerateIntervalError(const std::string& w) : Error(w) {}
};

struct UnknownFamilyError : Error {
  explicit UnknownFamilyError(const std::string& w) : Error(w) {}
};

struct InvalidParametersError : Error {
  explicit InvalidParametersError(const std::string& w) : Error(w) {}
};

struct GridTooCoarseError : Error {
  explicit GridTooCoarseError(const std::string& w) : Error(w) {}
};

struct OverflowRiskError : Error {
  explicit OverflowRiskError(const std::string& w) : Error(w) {}
};

struct TargetOutsideDomainError : Error {
  explicit TargetOutsideDomainError(const std::string& w) : Error(w) {}
};

struct SlopeOutsideDomainError : Error {
  explicit SlopeOutsideDomainError(const std::string& w) : Error(w) {}
};

// Crude estimator observed zero hits: the estimate carries no rate
// information beyond the rule-of-three bound 3/n, so the caller must switch
// method or enlarge n.
struct ZeroHitsError : Error {
  ZeroHitsError(long n_samples, const std::string& w)
      : Error(w), n(n_samples), upper_bound(3.0 / static_cast<double>(n_samples)) {}
  long n;
  double upper_bound;
};

struct ScanExhaustedError : Error {
  explicit ScanExhaustedError(const std::string& w) : Error(w) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(w) {}
};

struct ManifestMissingError : Error {
  explicit ManifestMissingError(const std::string& w) : Error(w) {}
};

}  // namespace ldp
