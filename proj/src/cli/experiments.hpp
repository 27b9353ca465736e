#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cli/config.hpp"

namespace ldp::cli {

struct RunOptions {
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  int workers = 1;
};

// Executes the experiment the config describes — the config's kind must
// match the subcommand — writing CSV artifacts plus manifest.json into
// out_dir.  Returns the process exit status: 0 on success, 3 when a
// divergence verdict is one the config declares a failure
// (fail_on_divergence).  Validation problems throw ConfigError; numerical
// errors from the computation propagate as ldp::Error.
int run_experiment(const std::string& expected_kind, const Config& config,
                   const RunOptions& opts);

// Row-wise numeric diff of the CSV artifacts listed in both manifests.
// Appends a human-readable report; returns 0 when every shared cell agrees
// within tolerance (infinities must match exactly), 1 otherwise.  Missing
// manifests throw ManifestMissingError.
int compare_runs(const std::string& dir_a, const std::string& dir_b,
                 double tolerance, std::string* report);

}  // namespace ldp::cli
