// Tests for the experiment-runner layer: config parsing and hashing, artifact
// and manifest layout, run reproducibility, directory comparison, and the
// ldplab binary's exit-code contract.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "ldp/errors.hpp"

namespace fs = std::filesystem;
using ldp::cli::Config;
using ldp::cli::RunOptions;
using nlohmann::json;

namespace {

// Runs `body`, expecting a ConfigError, and returns its message.
template <typename F>
std::string config_error_of(F&& body) {
  try {
    body();
  } catch (const ldp::ConfigError& e) {
    return e.what();
  }
  FAIL("expected a ConfigError");
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json load_manifest(const fs::path& dir) {
  json m = json::parse(slurp(dir / "manifest.json"));
  return m;
}

// Scratch directory for this binary's artifacts; wiped per test case.
fs::path scratch(const std::string& leaf) {
  fs::path base = fs::temp_directory_path() / "ldp_cli_tests" / leaf;
  fs::remove_all(base);
  fs::create_directories(base);
  return base;
}

const std::string kVerifyLocalText =
    "kind = verify-local\n"
    "model.family = rademacher\n"
    "T_grid = 20, 40\n"
    "beta = 0.5\n"
    "eps.fixed = 0.2\n"
    "n = 2000\n"
    "method = tilted\n"
    "seed = 77\n";

}  // namespace

TEST_CASE("config text parses comments, blanks, and whitespace") {
  Config c = ldp::cli::parse_config_text(
      "# run header comment\n"
      "\n"
      "kind = conjugate   # trailing comment\n"
      "  alpha_lo=-0.5\n"
      "alpha_hi =   0.5\n"
      "label = grid A\n",
      "mem");
  CHECK(c.source == "mem");
  CHECK(c.get("kind") == "conjugate");
  CHECK(c.get("alpha_lo") == "-0.5");
  CHECK(c.get("alpha_hi") == "0.5");
  CHECK(c.get("label") == "grid A");  // inner spaces survive, edges trimmed
  CHECK(c.has("kind"));
  CHECK(!c.has("seed"));
  CHECK(c.get_or("seed", "0") == "0");
  CHECK(c.values.size() == 4);
}

TEST_CASE("config parse errors carry source and line number") {
  std::string m = config_error_of([] {
    ldp::cli::parse_config_text("a = 1\nthis line has no equals\n", "cfg");
  });
  CHECK(contains(m, "cfg:2:"));
  CHECK(contains(m, "expected key=value"));
  CHECK(contains(m, "this line has no equals"));

  m = config_error_of([] { ldp::cli::parse_config_text(" = 5\n", "cfg"); });
  CHECK(contains(m, "cfg:1: empty key"));

  m = config_error_of([] {
    ldp::cli::parse_config_text("a = 1\nb = 2\na = 3\n", "cfg");
  });
  CHECK(contains(m, "cfg:3:"));
  CHECK(contains(m, "duplicate key 'a'"));
}

TEST_CASE("typed accessors validate and name the offending key") {
  Config c = ldp::cli::parse_config_text(
      "x = 1.5e-3\n"
      "count = 12\n"
      "frac = 3.5\n"
      "word = verily\n"
      "on = yes\n"
      "off = 0\n"
      "seed = 18446744073709551615\n"
      "grid = 1, 2.5 , -3\n"
      "gap = 1,,2\n"
      "alpha = 0.25b\n",
      "t");

  CHECK(c.number("x") == doctest::Approx(1.5e-3));
  CHECK(c.number_or("missing", 7.0) == 7.0);
  CHECK(c.integer("count") == 12);
  CHECK(c.integer_or("missing", 9) == 9);
  CHECK(c.seed() == 18446744073709551615ull);
  CHECK(c.flag_or("on", false));
  CHECK(!c.flag_or("off", true));
  CHECK(c.flag_or("missing", true));
  CHECK(c.number_list("grid") == std::vector<double>{1.0, 2.5, -3.0});

  CHECK(contains(config_error_of([&] { c.get("absent"); }),
                 "missing required key 'absent'"));
  CHECK(contains(config_error_of([&] { c.number("word"); }),
                 "key 'word' is not a number"));
  CHECK(contains(config_error_of([&] { c.number("alpha"); }),
                 "not a number: '0.25b'"));
  CHECK(contains(config_error_of([&] { c.integer("frac"); }),
                 "key 'frac' is not an integer"));
  CHECK(contains(config_error_of([&] { c.flag_or("word", false); }),
                 "key 'word' is not a boolean"));
  CHECK(contains(config_error_of([&] { c.number_list("gap"); }),
                 "key 'gap' has an empty list entry"));
  CHECK(contains(config_error_of([&] { c.number_list("word"); }),
                 "key 'word' has a non-numeric entry"));

  Config bad_seed = ldp::cli::parse_config_text("seed = -1\n", "t");
  CHECK(contains(config_error_of([&] { bad_seed.seed(); }),
                 "seed is not an unsigned integer"));
  Config empty_list = ldp::cli::parse_config_text("grid =   \n", "t");
  CHECK(contains(config_error_of([&] { empty_list.number_list("grid"); }),
                 "key 'grid' is an empty list"));
}

TEST_CASE("config hash ignores order and comments but not values") {
  Config a = ldp::cli::parse_config_text("kind = simulate\nT = 10\nseed = 3\n", "a");
  Config b = ldp::cli::parse_config_text(
      "# reshuffled with commentary\n"
      "seed = 3\n"
      "T = 10   # horizon\n"
      "kind = simulate\n",
      "b");
  CHECK(a.hash() == b.hash());

  Config changed = ldp::cli::parse_config_text("kind = simulate\nT = 11\nseed = 3\n", "c");
  CHECK(a.hash() != changed.hash());
  Config extra =
      ldp::cli::parse_config_text("kind = simulate\nT = 10\nseed = 3\ngrid_step = 1\n", "d");
  CHECK(a.hash() != extra.hash());
}

TEST_CASE("config files load like inline text and missing files fail loudly") {
  fs::path dir = scratch("files");
  fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << kVerifyLocalText;

  Config from_file = ldp::cli::parse_config_file(cfg.string());
  Config from_text = ldp::cli::parse_config_text(kVerifyLocalText, "inline");
  CHECK(from_file.source == cfg.string());
  CHECK(from_file.values == from_text.values);
  CHECK(from_file.hash() == from_text.hash());

  std::string m = config_error_of(
      [&] { ldp::cli::parse_config_file((dir / "absent.cfg").string()); });
  CHECK(contains(m, "cannot open config file"));
  CHECK(contains(m, "absent.cfg"));
}

TEST_CASE("experiment runs write a complete manifest and reproduce byte for byte") {
  fs::path dir = scratch("repro");
  Config c = ldp::cli::parse_config_text(kVerifyLocalText, "repro.cfg");

  RunOptions opts_a;
  opts_a.out_dir = (dir / "a").string();
  CHECK(ldp::cli::run_experiment("verify-local", c, opts_a) == 0);
  RunOptions opts_b;
  opts_b.out_dir = (dir / "b").string();
  CHECK(ldp::cli::run_experiment("verify-local", c, opts_b) == 0);

  for (const char* name : {"results.csv", "plot.csv", "manifest.json"})
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));

  json m = load_manifest(dir / "a");
  CHECK(m["kind"] == "verify-local");
  CHECK(m["seed"] == 77);
  CHECK(m["versions"]["artifact"] == "1.0.0");
  CHECK(m["versions"]["config_format"] == 1);
  CHECK(m["versions"]["csv_format"] == 1);

  // The recorded config hash matches an independent recomputation.
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(c.hash()));
  CHECK(m["config_hash"] == std::string("fnv1a:") + buf);

  // Every artifact except the manifest itself is listed with a hash tag.
  REQUIRE(m["files"].is_object());
  CHECK(m["files"].size() == 2);
  for (const char* name : {"results.csv", "plot.csv"}) {
    REQUIRE(m["files"].contains(name));
    CHECK(contains(m["files"][name].get<std::string>(), "fnv1a:"));
  }
  CHECK(!m["files"].contains("manifest.json"));

  // results.csv has the documented shape: one row per horizon.
  std::string results = slurp(dir / "a" / "results.csv");
  CHECK(contains(results,
                 "T,target,eps,method,n,p_hat,std_err,log_rate,reference_rate,abs_gap"));
  CHECK(std::count(results.begin(), results.end(), '\n') == 3);

  std::string report;
  CHECK(ldp::cli::compare_runs(opts_a.out_dir, opts_b.out_dir, 0.0, &report) == 0);
  CHECK(contains(report, "compared 2 shared files, 0 mismatching cells"));
}

TEST_CASE("seed overrides change results and compare flags them") {
  fs::path dir = scratch("seeds");
  Config c = ldp::cli::parse_config_text(kVerifyLocalText, "seeds.cfg");

  RunOptions base;
  base.out_dir = (dir / "base").string();
  REQUIRE(ldp::cli::run_experiment("verify-local", c, base) == 0);

  RunOptions other;
  other.out_dir = (dir / "other").string();
  other.seed_override = 999;
  REQUIRE(ldp::cli::run_experiment("verify-local", c, other) == 0);
  CHECK(load_manifest(dir / "other")["seed"] == 999);
  // Config hash describes the config, not the override.
  CHECK(load_manifest(dir / "other")["config_hash"] ==
        load_manifest(dir / "base")["config_hash"]);

  std::string report;
  CHECK(ldp::cli::compare_runs(base.out_dir, other.out_dir, 0.0, &report) == 1);
  CHECK(contains(report, "results.csv row"));
  CHECK(!contains(report, " 0 mismatching cells"));

  // A huge tolerance absorbs numeric gaps; text columns still match verbatim.
  CHECK(ldp::cli::compare_runs(base.out_dir, other.out_dir, 1e12, &report) == 0);

  CHECK_THROWS_AS(
      ldp::cli::compare_runs((dir / "nowhere").string(), base.out_dir, 0.0, nullptr),
      ldp::ManifestMissingError);
}

TEST_CASE("experiment configs are validated before anything runs") {
  fs::path dir = scratch("validate");
  Config c = ldp::cli::parse_config_text(kVerifyLocalText, "v.cfg");

  RunOptions opts;
  opts.out_dir = (dir / "out").string();
  std::string m =
      config_error_of([&] { ldp::cli::run_experiment("conjugate", c, opts); });
  CHECK(contains(m, "does not match subcommand 'conjugate'"));

  Config unknown_kind =
      ldp::cli::parse_config_text("kind = frobnicate\nseed = 1\n", "v.cfg");
  m = config_error_of(
      [&] { ldp::cli::run_experiment("frobnicate", unknown_kind, opts); });
  CHECK(contains(m, "unknown experiment kind 'frobnicate'"));

  Config stray = ldp::cli::parse_config_text(kVerifyLocalText + "bogus_key = 1\n", "v.cfg");
  m = config_error_of([&] { ldp::cli::run_experiment("verify-local", stray, opts); });
  CHECK(contains(m, "unknown key 'bogus_key' for kind verify-local"));

  RunOptions no_out;  // neither --out nor an 'out' key
  m = config_error_of([&] { ldp::cli::run_experiment("verify-local", c, no_out); });
  CHECK(contains(m, "no output directory"));

  // Nothing was written for the rejected runs.
  CHECK(!fs::exists(dir / "out"));

  // The 'out' key works when no override is given.
  Config with_out = ldp::cli::parse_config_text(
      kVerifyLocalText + "out = " + (dir / "from_key").string() + "\n", "v.cfg");
  CHECK(ldp::cli::run_experiment("verify-local", with_out, RunOptions{}) == 0);
  CHECK(fs::exists(dir / "from_key" / "manifest.json"));
}

TEST_CASE("divergent deviation integrals can be declared fatal") {
  fs::path dir = scratch("diverge");
  // Slope 2 leaves the walk's reachable band, so the refined integral blows up.
  Config c = ldp::cli::parse_config_text(
      "kind = deviation-integral\n"
      "model.family = rademacher\n"
      "path.nodes = 0:0, 1:2\n"
      "fail_on_divergence = true\n"
      "seed = 1\n",
      "div.cfg");
  RunOptions opts;
  opts.out_dir = (dir / "run").string();
  CHECK(ldp::cli::run_experiment("deviation-integral", c, opts) == 3);
  // The run still leaves honest artifacts behind.
  CHECK(fs::exists(dir / "run" / "trace.csv"));
  json m = load_manifest(dir / "run");
  CHECK(m["summary"]["diverged"] == true);

  Config tame = ldp::cli::parse_config_text(
      "kind = deviation-integral\n"
      "model.family = rademacher\n"
      "path.nodes = 0:0, 1:0.5\n"
      "fail_on_divergence = true\n"
      "seed = 1\n",
      "div.cfg");
  RunOptions opts2;
  opts2.out_dir = (dir / "tame").string();
  CHECK(ldp::cli::run_experiment("deviation-integral", tame, opts2) == 0);
  CHECK(load_manifest(dir / "tame")["summary"]["diverged"] == false);
}

TEST_CASE("ldplab binary maps outcomes to exit codes") {
  // The binary sits next to this test under the build tree; skip gracefully
  // when run from elsewhere.
  fs::path exe = "./ldplab";
  if (!fs::exists(exe)) {
    MESSAGE("ldplab binary not in working directory; skipping end-to-end checks");
    return;
  }
  fs::path dir = scratch("exe");
  fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << kVerifyLocalText;

  auto run = [](const std::string& cmd) {
    int rc = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };

  std::string a = (dir / "a").string(), b = (dir / "b").string(),
              off = (dir / "off").string();
  CHECK(run("./ldplab verify-local --config " + cfg.string() + " --out " + a) == 0);
  CHECK(run("./ldplab verify-local --config " + cfg.string() + " --out " + b) == 0);
  CHECK(run("./ldplab verify-local --config " + cfg.string() + " --out " + off +
            " --seed 12345") == 0);

  CHECK(run("./ldplab compare " + a + " " + b) == 0);
  CHECK(run("./ldplab compare " + a + " " + off) == 1);
  CHECK(run("./ldplab compare " + a + " " + off + " --tolerance 1e12") == 0);
  CHECK(run("./ldplab compare " + a + " " + (dir / "missing").string()) == 2);

  // Config kind not matching the subcommand is a usage problem: exit 2.
  CHECK(run("./ldplab conjugate --config " + cfg.string() + " --out " +
            (dir / "c").string()) == 2);

  // A run whose estimator records zero hits is a runtime failure: exit 3.
  fs::path hopeless = dir / "hopeless.cfg";
  std::ofstream(hopeless) << "kind = verify-local\n"
                             "model.family = rademacher\n"
                             "T_grid = 10\n"
                             "beta = 0.5\n"
                             "eps.fixed = 0.05\n"
                             "n = 2000\n"
                             "method = crude\n"
                             "seed = 5\n";
  CHECK(run("./ldplab verify-local --config " + hopeless.string() + " --out " +
            (dir / "h").string()) == 3);
}
