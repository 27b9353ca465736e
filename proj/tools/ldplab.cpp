// ldplab — experiment runner for the large-deviation laboratory.
//
// Every run subcommand takes a flat key=value config describing one
// experiment and writes CSV artifacts plus a manifest into an output
// directory.  `compare` diffs two such directories cell by cell.
//
// Exit codes: 0 success, 1 compare found differences, 2 configuration or
// usage problems, 3 runtime failures (numerical errors, zero hits,
// divergence declared fatal).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "ldp/errors.hpp"

namespace {

struct SubArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

void add_run_flags(CLI::App* sub, SubArgs& args) {
  sub->add_option("--config", args.config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", args.out_dir,
                  "output directory (overrides the config's 'out')");
  sub->add_option("--seed", args.seed, "seed override");
  sub->add_option("--workers", args.workers, "worker threads for sampling")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for large deviation principles"};
  app.require_subcommand(1);

  static const char* kinds[] = {"conjugate",      "deviation-integral",
                                "simulate",       "verify-local",
                                "verify-fdd",     "verify-functional",
                                "varadhan",       "tightness"};
  SubArgs args[std::size(kinds)];
  CLI::App* subs[std::size(kinds)];
  for (std::size_t i = 0; i < std::size(kinds); ++i) {
    subs[i] = app.add_subcommand(kinds[i]);
    add_run_flags(subs[i], args[i]);
  }

  std::string dir_a, dir_b;
  double tolerance = 0.0;
  CLI::App* cmp = app.add_subcommand("compare", "diff two run directories");
  cmp->add_option("dir_a", dir_a, "first run directory")->required();
  cmp->add_option("dir_b", dir_b, "second run directory")->required();
  cmp->add_option("--tolerance", tolerance, "allowed per-cell numeric gap")
      ->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmp->parsed()) {
      std::string report;
      int status = ldp::cli::compare_runs(dir_a, dir_b, tolerance, &report);
      std::cout << report;
      return status;
    }
    for (std::size_t i = 0; i < std::size(kinds); ++i) {
      if (!subs[i]->parsed()) continue;
      ldp::cli::Config config = ldp::cli::parse_config_file(args[i].config_path);
      ldp::cli::RunOptions opts;
      opts.out_dir = args[i].out_dir;
      opts.seed_override = args[i].seed;
      opts.workers = args[i].workers;
      int status = ldp::cli::run_experiment(kinds[i], config, opts);
      std::cout << (status == 0 ? "ok" : "failed") << ": artifacts in "
                << (!opts.out_dir.empty() ? opts.out_dir
                                          : config.get_or("out", "?"))
                << "\n";
      return status;
    }
  } catch (const ldp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ldp::ManifestMissingError& e) {
    std::cerr << "compare error: " << e.what() << "\n";
    return 2;
  } catch (const ldp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
