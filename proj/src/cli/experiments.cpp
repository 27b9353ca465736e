#include "cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ldp/cadlag_path.hpp"
#include "ldp/conjugate.hpp"
#include "ldp/csv.hpp"
#include "ldp/deviation_integral.hpp"
#include "ldp/epsilon_schedule.hpp"
#include "ldp/errors.hpp"
#include "ldp/estimators.hpp"
#include "ldp/parallel.hpp"
#include "ldp/partition.hpp"
#include "ldp/process_model.hpp"
#include "ldp/rng.hpp"
#include "ldp/simulate.hpp"
#include "ldp/tightness.hpp"
#include "ldp/tilting.hpp"
#include "ldp/varadhan.hpp"

namespace ldp::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) { return ldp::format_double(v); }
std::string fmt(const ldp::ExtendedReal& v) {
  return v.finite() ? ldp::format_double(v.value()) : "inf";
}

// Gap between an estimated and a reference rate; matching infinities agree.
std::string fmt_gap(const ldp::ExtendedReal& a, const ldp::ExtendedReal& b) {
  if (a.finite() && b.finite()) return fmt(std::abs(a.value() - b.value()));
  if (!a.finite() && !b.finite()) return fmt(0.0);
  return "inf";
}

std::string hash_tag_of(const std::string& content) {
  std::uint64_t h = ldp::fnv1a(content.data(), content.size());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

// Collects artifact bodies, writes them out, and keeps the content hashes
// the manifest lists.
struct ArtifactWriter {
  fs::path dir;
  json files = json::object();

  explicit ArtifactWriter(const std::string& out_dir) : dir(out_dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
      throw ConfigError("cannot create output directory '" + out_dir + "'");
  }

  void write(const std::string& name, const std::string& content, bool list = true) {
    fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    if (!out)
      throw ConfigError("cannot write '" + p.string() + "'");
    out << content;
    out.close();
    if (!out)
      throw ConfigError("short write on '" + p.string() + "'");
    if (list) files[name] = hash_tag_of(content);
  }
};

std::vector<std::pair<double, double>> parse_pairs(const Config& c,
                                                   const std::string& key) {
  const std::string& raw = c.get(key);
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError(c.source + ": key '" + key + "' entries must look like a:b");
    try {
      out.emplace_back(ldp::parse_double(item.substr(0, colon)),
                       ldp::parse_double(item.substr(colon + 1)));
    } catch (const Error&) {
      throw ConfigError(c.source + ": key '" + key + "' has a non-numeric entry: '" +
                        item + "'");
    }
  }
  if (out.empty())
    throw ConfigError(c.source + ": key '" + key + "' is an empty list");
  return out;
}

ldp::ProcessModel model_from(const Config& c) {
  ldp::ModelSpec spec;
  spec.family = c.get("model.family");
  if (c.has("model.step_values")) spec.step_values = c.number_list("model.step_values");
  if (c.has("model.step_probs")) spec.step_probs = c.number_list("model.step_probs");
  spec.mean = c.number_or("model.mean", 0.0);
  spec.sigma = c.number_or("model.sigma", 1.0);
  spec.interarrival = c.get_or("model.interarrival", "exponential");
  spec.interarrival_param = c.number_or("model.interarrival_param", 1.0);
  spec.jump_family = c.get_or("model.jump_family", "discrete");
  if (c.has("model.jump_values")) spec.jump_values = c.number_list("model.jump_values");
  if (c.has("model.jump_probs")) spec.jump_probs = c.number_list("model.jump_probs");
  spec.jump_mean = c.number_or("model.jump_mean", 0.0);
  spec.jump_sigma = c.number_or("model.jump_sigma", 1.0);
  spec.jump_rate = c.number_or("model.jump_rate", 1.0);
  spec.noise = c.get_or("model.noise", "none");
  spec.noise_c = c.number_or("model.noise_c", 1.0);
  spec.noise_kappa = c.number_or("model.noise_kappa", 1.0);
  spec.noise_r = c.number_or("model.noise_r", 0.5);
  spec.z0 = c.number_or("model.z0", 0.0);
  try {
    return ldp::ProcessModel::from_spec(spec);
  } catch (const Error& e) {
    throw ConfigError(c.source + ": invalid model: " + e.what());
  }
}

ldp::EpsilonSchedule eps_from(const Config& c) {
  try {
    if (c.has("eps.fixed")) return ldp::EpsilonSchedule::fixed(c.number("eps.fixed"));
    ldp::EpsilonSchedule e;
    e.c = c.number_or("eps.c", 0.5);
    e.p = c.number_or("eps.p", 1.0 / 3.0);
    e.floor = c.number_or("eps.floor", 0.0);
    e.validate();
    return e;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(c.source + ": invalid window schedule: " + e.what());
  }
}

ldp::EstimateMethod::Kind method_from(const Config& c) {
  std::string m = c.get_or("method", "tilted");
  if (m == "crude") return ldp::EstimateMethod::Kind::Crude;
  if (m == "tilted") return ldp::EstimateMethod::Kind::Tilted;
  throw ConfigError(c.source + ": method must be 'crude' or 'tilted', got '" + m + "'");
}

ldp::CadlagPath path_from(const Config& c) {
  std::string kind = c.get_or("path.kind", "piecewise-linear");
  std::vector<std::pair<double, double>> nodes;
  if (c.has("path.file")) {
    if (c.has("path.nodes"))
      throw ConfigError(c.source + ": give path.nodes or path.file, not both");
    ldp::CsvTable table;
    try {
      table = ldp::read_csv(c.get("path.file"));
    } catch (const Error& e) {
      throw ConfigError(c.source + ": cannot read path.file: " + e.what());
    }
    if (table.header != std::vector<std::string>{"s", "v"})
      throw ConfigError(c.source + ": path.file must have header 's,v'");
    for (const auto& row : table.rows) {
      if (row.size() != 2)
        throw ConfigError(c.source + ": path.file row with wrong width");
      nodes.emplace_back(ldp::parse_double(row[0]), ldp::parse_double(row[1]));
    }
  } else {
    nodes = parse_pairs(c, "path.nodes");
  }
  try {
    if (kind == "piecewise-linear") return ldp::CadlagPath::piecewise_linear(nodes);
    if (kind == "step") return ldp::CadlagPath::step(nodes);
  } catch (const Error& e) {
    throw ConfigError(c.source + ": invalid path: " + e.what());
  }
  throw ConfigError(c.source + ": path.kind must be 'piecewise-linear' or 'step'");
}

ldp::RateFunction rate_from_walk(const Config& c, const ldp::ProcessModel& m) {
  const auto* w = m.walk();
  if (!w)
    throw ConfigError(c.source + ": this experiment needs a walk-family model");
  return ldp::walk_rate_function(m.analytic_A(), w->steps.slope_range());
}

ldp::ExtendedReal reference_rate_at(const ldp::FundamentalFunction& A, double beta) {
  ldp::SearchSpec spec;
  spec.mu_lo = -60.0;
  spec.mu_hi = 60.0;
  return ldp::conjugate_point(A, beta, spec);
}

long checked_n(const Config& c, long minimum) {
  long n = c.integer("n");
  if (n < minimum)
    throw ConfigError(c.source + ": n must be at least " + std::to_string(minimum));
  return n;
}

void check_allowed_keys(const Config& c, const std::string& kind) {
  static const std::set<std::string> common = {"kind", "seed", "out"};
  static const std::set<std::string> model_keys = {
      "model.family",        "model.step_values", "model.step_probs",
      "model.mean",          "model.sigma",       "model.interarrival",
      "model.interarrival_param", "model.jump_family", "model.jump_values",
      "model.jump_probs",    "model.jump_mean",   "model.jump_sigma",
      "model.jump_rate",     "model.noise",       "model.noise_c",
      "model.noise_kappa",   "model.noise_r",     "model.z0"};
  static const std::map<std::string, std::set<std::string>> per_kind = {
      {"conjugate", {"alpha_lo", "alpha_hi", "alpha_points"}},
      {"deviation-integral",
       {"path.kind", "path.nodes", "path.file", "refine.kind", "refine.max_level",
        "refine.tolerance", "refine.ceiling", "fail_on_divergence"}},
      {"simulate", {"T", "grid_step"}},
      {"verify-local",
       {"T_grid", "beta", "n", "eps.c", "eps.p", "eps.floor", "eps.fixed", "method",
        "conditioning.alpha", "conditioning.eta"}},
      {"verify-fdd",
       {"T_grid", "partition", "betas", "n", "eps.c", "eps.p", "eps.floor", "eps.fixed",
        "method"}},
      {"verify-functional",
       {"T_grid", "path.kind", "path.nodes", "path.file", "n", "eps.c", "eps.p",
        "eps.floor", "eps.fixed", "method"}},
      {"varadhan", {"T", "n", "phi.kind", "phi.slope", "phi.coeff", "phi.cap",
                    "phi.nodes", "method"}},
      {"tightness", {"N_targets", "T_grid", "n"}},
  };
  auto it = per_kind.find(kind);
  if (it == per_kind.end())
    throw ConfigError(c.source + ": unknown experiment kind '" + kind + "'");
  for (const auto& [k, v] : c.values)
    if (!common.count(k) && !model_keys.count(k) && !it->second.count(k))
      throw ConfigError(c.source + ": unknown key '" + k + "' for kind " + kind);
}

struct RunContext {
  std::uint64_t seed = 0;
  int workers = 1;
};

json run_conjugate(const Config& c, ArtifactWriter& w) {
  double lo = c.number("alpha_lo"), hi = c.number("alpha_hi");
  long pts = c.integer("alpha_points");
  if (!(lo < hi) || pts < 2)
    throw ConfigError(c.source + ": need alpha_lo < alpha_hi and alpha_points >= 2");
  ldp::ProcessModel model = model_from(c);
  ldp::FundamentalFunction A = model.analytic_A();

  std::vector<double> grid(static_cast<std::size_t>(pts));
  for (long i = 0; i < pts; ++i)
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) /
                                                 static_cast<double>(pts - 1);
  ldp::SearchSpec spec;
  spec.mu_lo = -60.0;
  spec.mu_hi = 60.0;
  ldp::RateFunction D = ldp::legendre_transform(A, grid, spec);

  std::string body = "alpha,D\n";
  for (double a : grid) body += ldp::csv_join({fmt(a), fmt(D(a))});
  w.write("conjugate.csv", body);
  return json{{"rows", pts}};
}

json run_deviation_integral(const Config& c, ArtifactWriter& w, int* status) {
  ldp::CadlagPath f = path_from(c);
  ldp::ProcessModel model = model_from(c);
  ldp::RateFunction D = rate_from_walk(c, model);

  ldp::RefinementSchedule sched;
  std::string rk = c.get_or("refine.kind", "dyadic");
  if (rk == "dyadic")
    sched.kind = ldp::RefinementSchedule::Kind::Dyadic;
  else if (rk == "uniform")
    sched.kind = ldp::RefinementSchedule::Kind::Uniform;
  else
    throw ConfigError(c.source + ": refine.kind must be 'dyadic' or 'uniform'");
  sched.max_level = static_cast<int>(c.integer_or("refine.max_level", sched.max_level));
  sched.tolerance = c.number_or("refine.tolerance", sched.tolerance);
  sched.divergence_ceiling = c.number_or("refine.ceiling", sched.divergence_ceiling);

  ldp::DeviationIntegralResult result = ldp::deviation_integral_J(f, D, sched);

  std::string body = "K,I_value\n";
  for (const auto& [segments, value] : result.trace)
    body += ldp::csv_join({std::to_string(segments), fmt(value)});
  w.write("trace.csv", body);

  if (result.diverged && c.flag_or("fail_on_divergence", false)) *status = 3;
  return json{{"value", fmt(result.value)},
              {"diverged", result.diverged},
              {"converged", result.converged}};
}

json run_simulate(const Config& c, ArtifactWriter& w, const RunContext& ctx) {
  double T = c.number("T");
  double grid_step = c.number_or("grid_step", 1.0);
  ldp::ProcessModel model = model_from(c);
  ldp::Trajectory traj = ldp::simulate(model, T, grid_step, ctx.seed);
  std::string body = "t,Z\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    body += ldp::csv_join({fmt(traj.times[i]), fmt(traj.values[i])});
  w.write("trajectory.csv", body);
  return json{{"points", traj.times.size()}};
}

// Shared tail of the three verify kinds: per-horizon cells run in parallel
// under derived seeds, rows land in horizon order, worst finite gap goes to
// the summary.
json write_verify_outputs(ArtifactWriter& w, const std::vector<double>& Ts,
                          const std::string& target_label,
                          const std::vector<ldp::MCEstimate>& cells,
                          const ldp::ExtendedReal& reference) {
  std::string results = "T,target,eps,method,n,p_hat,std_err,log_rate,reference_rate,abs_gap\n";
  std::string plot = "T,log_rate,reference_rate\n";
  double worst_gap = 0.0;
  bool any_gap = false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const ldp::MCEstimate& est = cells[i];
    results += ldp::csv_join({fmt(Ts[i]), target_label, fmt(est.eps), est.method.str(),
                              std::to_string(est.n), fmt(est.p_hat), fmt(est.std_err),
                              fmt(est.log_rate), fmt(reference),
                              fmt_gap(est.log_rate, reference)});
    plot += ldp::csv_join({fmt(Ts[i]), fmt(est.log_rate), fmt(reference)});
    if (est.log_rate.finite() && reference.finite()) {
      worst_gap = std::max(worst_gap, std::abs(est.log_rate.value() - reference.value()));
      any_gap = true;
    }
  }
  w.write("results.csv", results);
  w.write("plot.csv", plot);
  json summary{{"cells", cells.size()}, {"reference_rate", fmt(reference)}};
  summary["worst_abs_gap"] = any_gap ? json(fmt(worst_gap)) : json(nullptr);
  return summary;
}

json run_verify_local(const Config& c, ArtifactWriter& w, const RunContext& ctx) {
  std::vector<double> Ts = c.number_list("T_grid");
  double beta = c.number("beta");
  long n = checked_n(c, 100);
  ldp::EpsilonSchedule eps = eps_from(c);
  ldp::EstimateMethod::Kind kind = method_from(c);
  std::optional<ldp::Conditioning> conditioning;
  if (c.has("conditioning.alpha") != c.has("conditioning.eta"))
    throw ConfigError(c.source + ": conditioning needs both alpha and eta");
  if (c.has("conditioning.alpha")) {
    conditioning = ldp::Conditioning{c.number("conditioning.alpha"),
                                     c.number("conditioning.eta")};
    if (!(conditioning->eta > 0.0))
      throw ConfigError(c.source + ": conditioning.eta must be positive");
  }
  ldp::ProcessModel model = model_from(c);
  if (kind == ldp::EstimateMethod::Kind::Tilted && !model.per_step_law())
    throw ConfigError(c.source + ": the tilted method needs a walk-family model");

  ldp::ExtendedReal reference = reference_rate_at(model.analytic_A(), beta);
  std::vector<ldp::MCEstimate> cells(Ts.size());
  ldp::parallel_for(Ts.size(), ctx.workers, [&](std::size_t i) {
    ldp::SampleOptions so{ldp::derive_seed(ctx.seed, i), 1};
    cells[i] = ldp::estimate_local(model, beta, Ts[i], eps, n, kind, conditioning, so);
  });
  return write_verify_outputs(w, Ts, fmt(beta), cells, reference);
}

json run_verify_fdd(const Config& c, ArtifactWriter& w, const RunContext& ctx) {
  std::vector<double> Ts = c.number_list("T_grid");
  std::vector<double> betas = c.number_list("betas");
  long n = checked_n(c, 100);
  ldp::EpsilonSchedule eps = eps_from(c);
  ldp::EstimateMethod::Kind kind = method_from(c);
  ldp::ProcessModel model = model_from(c);
  if (kind == ldp::EstimateMethod::Kind::Tilted && !model.per_step_law())
    throw ConfigError(c.source + ": the tilted method needs a walk-family model");

  std::optional<ldp::Partition> part;
  try {
    part.emplace(c.number_list("partition"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(c.source + ": invalid partition: " + e.what());
  }
  if (betas.size() != part->segments())
    throw ConfigError(c.source + ": betas must have one entry per partition segment");

  ldp::FundamentalFunction A = model.analytic_A();
  ldp::ExtendedReal reference(0.0);
  for (std::size_t k = 0; k < betas.size(); ++k)
    reference += scale(part->weight(k), reference_rate_at(A, betas[k]));

  std::string target_label;
  for (std::size_t k = 0; k < betas.size(); ++k) {
    if (k) target_label += ";";
    target_label += fmt(betas[k]);
  }

  std::vector<ldp::MCEstimate> cells(Ts.size());
  ldp::parallel_for(Ts.size(), ctx.workers, [&](std::size_t i) {
    ldp::SampleOptions so{ldp::derive_seed(ctx.seed, i), 1};
    cells[i] = ldp::estimate_fdd(model, *part, betas, Ts[i], eps, n, kind, so);
  });
  return write_verify_outputs(w, Ts, target_label, cells, reference);
}

json run_verify_functional(const Config& c, ArtifactWriter& w, const RunContext& ctx) {
  std::vector<double> Ts = c.number_list("T_grid");
  long n = checked_n(c, 100);
  ldp::EpsilonSchedule eps = eps_from(c);
  ldp::EstimateMethod::Kind kind = method_from(c);
  ldp::CadlagPath f = path_from(c);
  if (!f.continuous())
    throw ConfigError(c.source + ": verify-functional needs a piecewise-linear path");
  ldp::ProcessModel model = model_from(c);
  if (!model.walk())
    throw ConfigError(c.source + ": verify-functional needs a walk-family model");

  ldp::RateFunction D = rate_from_walk(c, model);
  ldp::ExtendedReal reference = ldp::deviation_integral_J(f, D).value;

  std::vector<ldp::MCEstimate> cells(Ts.size());
  ldp::parallel_for(Ts.size(), ctx.workers, [&](std::size_t i) {
    ldp::SampleOptions so{ldp::derive_seed(ctx.seed, i), 1};
    cells[i] = ldp::estimate_functional(model, f, Ts[i], eps, n, kind, so);
  });
  return write_verify_outputs(w, Ts, "path", cells, reference);
}

ldp::PhiSpec phi_from(const Config& c) {
  std::string k = c.get("phi.kind");
  try {
    if (k == "linear") return ldp::PhiSpec::linear(c.number("phi.slope"));
    if (k == "quadratic-capped")
      return ldp::PhiSpec::quadratic_capped(c.number("phi.coeff"), c.number("phi.cap"));
    if (k == "piecewise-linear")
      return ldp::PhiSpec::piecewise_linear(parse_pairs(c, "phi.nodes"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(c.source + ": invalid phi: " + e.what());
  }
  throw ConfigError(c.source + ": phi.kind must be linear, quadratic-capped, or "
                               "piecewise-linear");
}

json run_varadhan(const Config& c, ArtifactWriter& w, const RunContext& ctx) {
  double T = c.number("T");
  long n = checked_n(c, 1);
  ldp::PhiSpec phi = phi_from(c);
  ldp::EstimateMethod::Kind kind = method_from(c);
  ldp::ProcessModel model = model_from(c);
  const auto* walk = model.walk();
  if (!walk)
    throw ConfigError(c.source + ": varadhan needs a walk-family model");

  ldp::RateFunction D = rate_from_walk(c, model);
  ldp::VaradhanReference ref =
      ldp::varadhan_reference(phi, D, ldp::varadhan_window(walk->steps));
  ldp::SampleOptions so{ctx.seed, ctx.workers};
  ldp::VaradhanEstimate est = ldp::varadhan_functional(model, phi, T, n, kind, so);

  std::string body = "T,value,std_err,reference,abs_gap,tilt_mu\n";
  body += ldp::csv_join({fmt(T), fmt(est.value), fmt(est.std_err), fmt(ref.value),
                         fmt(std::abs(est.value - ref.value)), fmt(est.tilt_mu)});
  w.write("varadhan.csv", body);
  return json{{"value", fmt(est.value)},
              {"reference", fmt(ref.value)},
              {"abs_gap", fmt(std::abs(est.value - ref.value))}};
}

json run_tightness(const Config& c, ArtifactWriter& w, const RunContext& ctx) {
  std::vector<double> Ns = c.number_list("N_targets");
  std::vector<double> Ts = c.number_list("T_grid");
  long n = checked_n(c, 100);
  ldp::ProcessModel model = model_from(c);
  if (!model.per_step_law())
    throw ConfigError(c.source + ": tightness needs a walk-family model");

  ldp::SampleOptions so{ctx.seed, ctx.workers};
  ldp::TightnessReport report = ldp::exponential_tightness_scan(model, Ns, Ts, n, so);

  std::string body = "N,v,achieved,mc_log_rate,mc_p_hat,mc_zero_hits\n";
  for (const auto& e : report.entries)
    body += ldp::csv_join({fmt(e.N), fmt(e.v), fmt(e.achieved), fmt(e.mc_log_rate),
                           fmt(e.mc_p_hat), e.mc_zero_hits ? "true" : "false"});
  w.write("tightness.csv", body);
  return json{{"targets", report.entries.size()}, {"T_star", fmt(report.T_star)}};
}

}  // namespace

int run_experiment(const std::string& expected_kind, const Config& c,
                   const RunOptions& opts) {
  const std::string kind = c.get("kind");
  if (kind != expected_kind)
    throw ConfigError(c.source + ": config kind '" + kind +
                      "' does not match subcommand '" + expected_kind + "'");
  check_allowed_keys(c, kind);

  std::string out_dir = !opts.out_dir.empty() ? opts.out_dir : c.get_or("out", "");
  if (out_dir.empty())
    throw ConfigError(c.source + ": no output directory: pass --out or set 'out'");
  RunContext ctx;
  ctx.seed = opts.seed_override ? *opts.seed_override : c.seed();
  ctx.workers = opts.workers;

  ArtifactWriter w(out_dir);
  int status = 0;
  json summary;
  if (kind == "conjugate")
    summary = run_conjugate(c, w);
  else if (kind == "deviation-integral")
    summary = run_deviation_integral(c, w, &status);
  else if (kind == "simulate")
    summary = run_simulate(c, w, ctx);
  else if (kind == "verify-local")
    summary = run_verify_local(c, w, ctx);
  else if (kind == "verify-fdd")
    summary = run_verify_fdd(c, w, ctx);
  else if (kind == "verify-functional")
    summary = run_verify_functional(c, w, ctx);
  else if (kind == "varadhan")
    summary = run_varadhan(c, w, ctx);
  else if (kind == "tightness")
    summary = run_tightness(c, w, ctx);

  char hash_buf[17];
  std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                static_cast<unsigned long long>(c.hash()));
  json manifest;
  manifest["config_hash"] = std::string("fnv1a:") + hash_buf;
  manifest["files"] = w.files;
  manifest["kind"] = kind;
  manifest["seed"] = ctx.seed;
  manifest["summary"] = summary;
  manifest["versions"] = json{{"artifact", "1.0.0"}, {"config_format", 1}, {"csv_format", 1}};
  w.write("manifest.json", manifest.dump(2) + "\n", /*list=*/false);
  return status;
}

int compare_runs(const std::string& dir_a, const std::string& dir_b, double tolerance,
                 std::string* report) {
  auto load_manifest = [](const std::string& dir) {
    fs::path p = fs::path(dir) / "manifest.json";
    std::ifstream in(p);
    if (!in)
      throw ManifestMissingError("no manifest at '" + p.string() + "'");
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw ManifestMissingError("unreadable manifest at '" + p.string() + "': " +
                                 e.what());
    }
    return j;
  };
  json ma = load_manifest(dir_a);
  json mb = load_manifest(dir_b);

  std::ostringstream rep;
  long mismatches = 0;
  long shown = 0;
  std::vector<std::string> shared;
  if (ma.contains("files") && mb.contains("files")) {
    for (const auto& [name, unused] : ma["files"].items())
      if (mb["files"].contains(name)) shared.push_back(name);
    for (const auto& [name, unused] : ma["files"].items())
      if (!mb["files"].contains(name)) rep << "only in " << dir_a << ": " << name << "\n";
    for (const auto& [name, unused] : mb["files"].items())
      if (!ma["files"].contains(name)) rep << "only in " << dir_b << ": " << name << "\n";
  }

  auto cell_mismatch = [&](const std::string& a, const std::string& b) {
    double x, y;
    try {
      x = ldp::parse_double(a);
      y = ldp::parse_double(b);
    } catch (const Error&) {
      return a != b;  // non-numeric cells must match verbatim
    }
    if (std::isinf(x) || std::isinf(y)) return !(std::isinf(x) && std::isinf(y) && (x > 0) == (y > 0));
    return !(std::abs(x - y) <= tolerance);
  };

  for (const std::string& name : shared) {
    ldp::CsvTable ta = ldp::read_csv((fs::path(dir_a) / name).string());
    ldp::CsvTable tb = ldp::read_csv((fs::path(dir_b) / name).string());
    if (ta.header != tb.header) {
      ++mismatches;
      rep << name << ": headers differ\n";
      continue;
    }
    if (ta.rows.size() != tb.rows.size()) {
      ++mismatches;
      rep << name << ": row counts differ (" << ta.rows.size() << " vs "
          << tb.rows.size() << ")\n";
      continue;
    }
    for (std::size_t r = 0; r < ta.rows.size(); ++r) {
      const auto& ra = ta.rows[r];
      const auto& rb = tb.rows[r];
      if (ra.size() != rb.size()) {
        ++mismatches;
        rep << name << " row " << r + 1 << ": widths differ\n";
        continue;
      }
      for (std::size_t col = 0; col < ra.size(); ++col) {
        if (cell_mismatch(ra[col], rb[col])) {
          ++mismatches;
          if (shown < 50) {
            rep << name << " row " << r + 1 << " col " << ta.header[col] << ": "
                << ra[col] << " vs " << rb[col] << "\n";
            ++shown;
          }
        }
      }
    }
  }
  rep << "compared " << shared.size() << " shared files, " << mismatches
      << " mismatching cells\n";
  if (report) *report = rep.str();
  return mismatches == 0 ? 0 : 1;
}

}  // namespace ldp::cli
