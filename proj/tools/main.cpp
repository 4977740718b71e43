// Command-line front end: certificates, bound evaluation, sample-size
// planning, seeded tail simulation, property verification and stationary-law
// histograms.  Every stochastic subcommand requires an explicit seed and is
// bit-reproducible for any --threads value.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapcert/bernoulli.hpp"
#include "gapcert/bounds.hpp"
#include "gapcert/certificates.hpp"
#include "gapcert/constants.hpp"
#include "gapcert/doeblin.hpp"
#include "gapcert/errors.hpp"
#include "gapcert/hypercube.hpp"
#include "gapcert/io.hpp"
#include "gapcert/stats.hpp"
#include "gapcert/verify.hpp"

namespace {

using gapcert::io::format_double;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;

ordered_json certificate_json(const gapcert::GapCertificate& cert) {
  ordered_json j;
  j["family"] = gapcert::family_name(cert.family);
  j["delta0"] = cert.delta0;
  j["c_const"] = cert.c_const;
  j["theta"] = cert.theta;
  j["params"] = ordered_json::object();
  for (const auto& [key, value] : cert.params) j["params"][key] = value;
  return j;
}

ordered_json bound_json(const gapcert::BoundResult& r) {
  ordered_json j;
  // Non-finite raw values (cubic-dominated variance bound) stay readable.
  if (std::isfinite(r.raw)) {
    j["raw"] = r.raw;
  } else {
    j["raw"] = format_double(r.raw);
  }
  j["clipped"] = r.clipped;
  j["regime"] = gapcert::regime_name(r.regime);
  j["valid"] = r.valid();
  j["violated_preconditions"] = ordered_json::array();
  for (const auto flag : r.violated)
    j["violated_preconditions"].push_back(gapcert::flag_name(flag));
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

gapcert::CubeNorm cube_norm_from(const std::string& name) {
  if (name == "L") return gapcert::CubeNorm::kL;
  if (name == "dL") return gapcert::CubeNorm::kDL;
  if (name == "W") return gapcert::CubeNorm::kW;
  gapcert::fail("PARSE", "unknown norm family (expected L, dL or W): " + name);
}

void write_or_print(const std::optional<std::string>& path,
                    const std::string& content) {
  if (path) {
    gapcert::io::write_text_file(*path, content);
  } else {
    std::cout << content;
  }
}

struct SimulateArgs {
  std::string family;
  // hypercube
  int n_slots = 4;
  std::string observable = "rho";
  std::string norm_family = "dL";
  std::string start = "point";
  std::uint64_t start_vertex = 0;
  // doeblin
  std::string kernel_path;
  std::string observable_values;
  int start_state = 0;
  // bernoulli
  double lambda = 0.618;
  std::string observable_json;
  double start_point = 0.0;
  std::optional<double> mu0;
  // shared
  std::int64_t n = 1000;
  std::uint64_t replicas = 10000;
  std::uint64_t seed = 0;
  std::string a_grid_csv;
  std::optional<std::string> out;
  std::optional<std::string> dump_observable;
  int threads = 0;
};

int run_simulate(const SimulateArgs& args) {
  using gapcert::stats::deviation_curve;
  gapcert::stats::TailCurve curve;
  ordered_json summary;
  summary["subcommand"] = "simulate";
  summary["family"] = args.family;
  summary["n"] = args.n;
  summary["replicas"] = args.replicas;
  summary["seed"] = args.seed;

  if (args.family == "hypercube") {
    const auto norm = cube_norm_from(args.norm_family);
    const auto cert = gapcert::hypercube_gap(args.n_slots, norm);
    gapcert::cube::DenseObservable f;
    if (args.observable == "rho") {
      f = gapcert::cube::polarization(args.n_slots);
    } else if (args.observable == "ind0") {
      f = gapcert::cube::slot_indicator(args.n_slots);
    } else {
      gapcert::fail("PARSE", "unknown observable (expected rho or ind0): " +
                                 args.observable);
    }
    const auto sn = gapcert::cube::seminorms(f);
    gapcert::ObservableSpec obs;
    obs.sup_norm = sn.sup;
    switch (norm) {
      case gapcert::CubeNorm::kL: obs.seminorm = sn.lip; break;
      case gapcert::CubeNorm::kDL: obs.seminorm = args.n_slots * sn.lip; break;
      case gapcert::CubeNorm::kW: obs.seminorm = sn.w; break;
    }
    obs.norm = obs.sup_norm + obs.seminorm;
    obs.family = cert.family;

    gapcert::cube::SimulationPlan plan;
    plan.n = args.n;
    plan.replicas = args.replicas;
    plan.seed = args.seed;
    plan.start = args.start == "uniform" ? gapcert::cube::Start::kUniform
                                         : gapcert::cube::Start::kPoint;
    plan.start_vertex = args.start_vertex;
    plan.threads = args.threads;

    const auto means = gapcert::cube::replica_means(f, plan);
    const double center = gapcert::cube::uniform_mean(f);
    const auto grid =
        args.a_grid_csv.empty()
            ? gapcert::stats::default_a_grid(
                  obs.norm * cert.delta0 / gapcert::constants::kRegimeSplitDiv)
            : parse_list(args.a_grid_csv);
    curve = deviation_curve(means, center, grid, [&](double a) {
      return gapcert::main_bound(cert, obs, plan.n, a);
    });
    summary["delta0"] = cert.delta0;
    summary["norm"] = obs.norm;
    summary["mu0"] = center;
    summary["seminorms"] = {{"sup", sn.sup}, {"lip", sn.lip}, {"w", sn.w},
                            {"s", sn.s},     {"norm_L", sn.norm_l},
                            {"norm_dL", sn.norm_dl}, {"norm_W", sn.norm_w}};
    if (args.dump_observable) {
      std::ostringstream os;
      gapcert::io::write_observable_csv(os, f);
      gapcert::io::write_text_file(*args.dump_observable, os.str());
    }
  } else if (args.family == "doeblin") {
    gapcert::require(!args.kernel_path.empty(), "PARSE",
                     "--kernel FILE is required for the doeblin family");
    const auto kernel = gapcert::io::read_kernel_file(args.kernel_path);
    std::vector<double> f;
    if (!args.observable_values.empty()) {
      f = parse_list(args.observable_values);
    } else {
      // Default observable: +1 on even states, -1 on odd ones.
      f.resize(kernel.size);
      for (int i = 0; i < kernel.size; ++i) f[i] = (i % 2 == 0) ? 1.0 : -1.0;
    }
    const auto split = gapcert::doeblin::minorization_split(kernel);

    gapcert::doeblin::SimulationPlan plan;
    plan.n = args.n;
    plan.replicas = args.replicas;
    plan.seed = args.seed;
    plan.start_state = args.start_state;
    plan.threads = args.threads;

    const auto means = gapcert::doeblin::replica_means(kernel, f, plan);
    const auto pi = gapcert::doeblin::stationary_distribution(kernel);
    double center = 0.0;
    for (int i = 0; i < kernel.size; ++i) center += pi[i] * f[i];
    const auto grid =
        args.a_grid_csv.empty()
            ? gapcert::stats::default_a_grid(
                  split.beta / gapcert::constants::kDoeblinWindowDiv)
            : parse_list(args.a_grid_csv);
    curve = deviation_curve(means, center, grid, [&](double a) {
      return gapcert::doeblin_corollary_bound(split.beta, plan.n, a);
    });
    summary["beta"] = split.beta;
    summary["dobrushin"] = gapcert::doeblin::dobrushin_coefficient(kernel);
    summary["mu0"] = center;
  } else if (args.family == "bernoulli") {
    const auto ifs = gapcert::bernoulli::make_ifs(args.lambda);
    gapcert::bernoulli::StepFunction f =
        args.observable_json.empty()
            ? gapcert::bernoulli::threshold_indicator(0.0)
            : gapcert::io::read_step_function_file(args.observable_json);
    const auto norm = gapcert::bernoulli::bv_norm(f);

    gapcert::bernoulli::SimulationPlan plan;
    plan.n = args.n;
    plan.replicas = args.replicas;
    plan.seed = args.seed;
    plan.start = args.start_point;
    plan.threads = args.threads;

    const auto est = gapcert::bernoulli::estimate_integral(ifs, f, plan);
    const double center = args.mu0 ? *args.mu0 : est.estimate;
    const double window =
        norm.norm / (gapcert::constants::kRegimeSplitDiv *
                     (std::ldexp(1.0, ifs.ell + 1) - 1.0));
    const auto grid = args.a_grid_csv.empty()
                          ? gapcert::stats::default_a_grid(window)
                          : parse_list(args.a_grid_csv);
    curve = deviation_curve(est.means, center, grid, [&](double a) {
      return gapcert::bv_corollary_bound(ifs.ell, norm.norm, plan.n, a);
    });
    summary["lambda"] = args.lambda;
    summary["ell"] = ifs.ell;
    summary["norm_bv"] = norm.norm;
    summary["estimate"] = est.estimate;
    summary["center"] = center;
    summary["center_source"] = args.mu0 ? "given" : "median_estimate";
  } else {
    gapcert::fail("PARSE", "unknown family: " + args.family);
  }

  std::ostringstream os;
  gapcert::io::write_deviation_curve_csv(os, curve);
  if (args.out) {
    gapcert::io::write_text_file(*args.out, os.str());
    summary["out"] = *args.out;
    emit(summary);
  } else {
    emit(summary);
    std::cout << os.str();
  }
  return kExitOk;
}

// --config FILE: flat JSON object {"subcommand": "...", "flag": value, ...}
// expanded into an argv vector; boolean true flags become bare switches.
std::vector<std::string> argv_from_config(const std::string& path) {
  const auto text = gapcert::io::read_text_file(path);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  gapcert::require(!j.is_discarded() && j.is_object(), "PARSE",
                   "config must be a JSON object");
  gapcert::require(j.contains("subcommand"), "PARSE",
                   "config needs a \"subcommand\" entry");
  std::vector<std::string> argv;
  argv.push_back(j["subcommand"].get<std::string>());
  for (const auto& [key, value] : j.items()) {
    if (key == "subcommand") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) argv.push_back("--" + key);
      continue;
    }
    argv.push_back("--" + key);
    if (value.is_string()) {
      argv.push_back(value.get<std::string>());
    } else {
      argv.push_back(value.dump());
    }
  }
  return argv;
}

int dispatch(std::vector<std::string> args);

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.size() == 2 && args[0] == "--config") {
    args = argv_from_config(args[1]);
  }
  return dispatch(std::move(args));
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{
      "Spectral-gap certificates, explicit Markov-chain concentration "
      "bounds, and seeded simulation oracles"};
  app.require_subcommand(1);

  // --- gap ---------------------------------------------------------------
  auto* gap = app.add_subcommand("gap", "print a gap certificate as JSON");
  std::string gap_family = "hypercube";
  double gap_beta = 0.5, gap_lambda = 0.618, gap_c = 1.0, gap_theta = 0.0;
  int gap_slots = 4;
  std::string gap_norm = "dL";
  gap->add_option("--family", gap_family,
                  "doeblin | hypercube | bernoulli | custom")
      ->required();
  gap->add_option("--beta", gap_beta, "minorization constant (doeblin)");
  gap->add_option("--lambda", gap_lambda, "contraction ratio (bernoulli)");
  gap->add_option("--n-slots", gap_slots, "hypercube dimension N");
  gap->add_option("--norm", gap_norm, "hypercube norm family: L | dL | W");
  gap->add_option("--c-const", gap_c, "lemma constant C (custom)");
  gap->add_option("--theta", gap_theta, "seminorm contraction factor (custom)");

  // --- bound ---------------------------------------------------------------
  auto* bound = app.add_subcommand("bound", "evaluate one of the tail bounds");
  std::string bound_theorem;
  double bound_delta0 = 0.5, bound_norm = 1.0, bound_a = 0.0;
  double bound_u = 1.0, bound_beta = 0.5, bound_norm_bv = 1.0;
  std::optional<double> bound_sigma2;
  int bound_ell = 1;
  std::int64_t bound_n = 1000;
  bound->add_option("--theorem", bound_theorem, "A | B | doeblin | bv")
      ->required();
  bound->add_option("--delta0", bound_delta0, "certified gap (A, B)");
  bound->add_option("--norm", bound_norm, "observable norm (A, B)");
  bound->add_option("--n", bound_n, "chain length")->required();
  bound->add_option("--a", bound_a, "deviation")->required();
  bound->add_option("--U", bound_u, "variance proxy (B)");
  bound->add_option("--sigma2", bound_sigma2, "known dynamical variance (B)");
  bound->add_option("--beta", bound_beta, "minorization constant (doeblin)");
  bound->add_option("--ell", bound_ell, "block length (bv)");
  bound->add_option("--norm-bv", bound_norm_bv, "BV norm (bv)");

  // --- plan ----------------------------------------------------------------
  auto* plan = app.add_subcommand("plan", "smallest n meeting a target tail");
  double plan_delta0 = 0.5, plan_norm = 1.0, plan_a = 0.1, plan_p = 0.05;
  plan->add_option("--delta0", plan_delta0, "certified gap")->required();
  plan->add_option("--norm", plan_norm, "observable norm");
  plan->add_option("--a", plan_a, "deviation")->required();
  plan->add_option("--p", plan_p, "target tail probability")->required();

  // --- simulate --------------------------------------------------------------
  auto* sim = app.add_subcommand(
      "simulate", "seeded replica simulation and deviation curves");
  SimulateArgs sa;
  sim->add_option("--family", sa.family, "hypercube | doeblin | bernoulli")
      ->required();
  sim->add_option("--n", sa.n, "steps per replica")->required();
  sim->add_option("--replicas", sa.replicas, "replica count");
  sim->add_option("--seed", sa.seed, "master seed (replica r uses substream r)")
      ->required();
  sim->add_option("--a-grid", sa.a_grid_csv,
                  "comma-separated deviations (default: 10-point grid inside "
                  "the validity window)");
  sim->add_option("--out", sa.out, "deviation-curve CSV path (default stdout)");
  sim->add_option("--threads", sa.threads, "worker cap, 0 = hardware");
  sim->add_option("--n-slots", sa.n_slots, "hypercube dimension N");
  sim->add_option("--observable", sa.observable, "rho | ind0 (hypercube)");
  sim->add_option("--norm-family", sa.norm_family, "L | dL | W (hypercube)");
  sim->add_option("--start", sa.start, "point | uniform (hypercube)");
  sim->add_option("--start-vertex", sa.start_vertex, "start vertex word");
  sim->add_option("--dump-observable", sa.dump_observable,
                  "write the dense observable as CSV (hypercube)");
  sim->add_option("--kernel", sa.kernel_path, "kernel JSON file (doeblin)");
  sim->add_option("--observable-values", sa.observable_values,
                  "comma-separated observable values in [-1,1] (doeblin)");
  sim->add_option("--start-state", sa.start_state, "start state (doeblin)");
  sim->add_option("--lambda", sa.lambda, "contraction ratio (bernoulli)");
  sim->add_option("--observable-json", sa.observable_json,
                  "step-function JSON file (bernoulli)");
  sim->add_option("--start-point", sa.start_point, "start point (bernoulli)");
  sim->add_option("--mu0", sa.mu0,
                  "reference mean for tails (bernoulli; default: median "
                  "replica estimate)");

  // --- verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run the property suites");
  bool verify_quick = false, verify_full = false;
  std::uint64_t verify_seed = 20250810;
  int verify_threads = 0;
  std::string verify_suite = "all";
  verify->add_flag("--quick", verify_quick, "reduced sample counts");
  verify->add_flag("--full", verify_full,
                   "include the Monte Carlo bound-validity and histogram "
                   "checks (minutes)");
  verify->add_option("--seed", verify_seed, "sampling seed");
  verify->add_option("--threads", verify_threads, "worker cap");
  verify->add_option("--suite", verify_suite,
                     "all | gap | bounds | hypercube | doeblin | bernoulli");

  // --- hist -----------------------------------------------------------------
  auto* hist = app.add_subcommand(
      "hist", "stationary-law histogram of the block chain");
  double hist_lambda = 0.618;
  int hist_bins = 500, hist_runs = 30, hist_threads = 0;
  std::int64_t hist_points = 1000000;
  std::uint64_t hist_seed = 0;
  double hist_start = 0.0;
  std::optional<std::string> hist_out;
  hist->add_option("--lambda", hist_lambda, "contraction ratio")->required();
  hist->add_option("--bins", hist_bins, "bin count over the attractor");
  hist->add_option("--runs", hist_runs, "independent runs to average");
  hist->add_option("--points", hist_points, "points per run");
  hist->add_option("--seed", hist_seed, "master seed")->required();
  hist->add_option("--start", hist_start, "start point");
  hist->add_option("--out", hist_out, "CSV path (default stdout)");
  hist->add_option("--threads", hist_threads, "worker cap");

  // --- constants --------------------------------------------------------------
  auto* consts = app.add_subcommand(
      "constants", "print the bound-constant provenance table");

  std::vector<const char*> argv_c;
  argv_c.push_back("gapcert");
  for (const auto& s : args) argv_c.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv_c.size()), argv_c.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (gap->parsed()) {
    gapcert::GapCertificate cert;
    int ell = 0;
    if (gap_family == "doeblin") {
      cert = gapcert::doeblin_gap(gap_beta);
    } else if (gap_family == "hypercube") {
      cert = gapcert::hypercube_gap(gap_slots, cube_norm_from(gap_norm));
    } else if (gap_family == "bernoulli") {
      const auto bc = gapcert::bernoulli_certificate(gap_lambda);
      cert = bc.cert;
      ell = bc.ell;
    } else if (gap_family == "custom") {
      cert = gapcert::lemma_gap({gap_c, gap_theta});
    } else {
      gapcert::fail("PARSE", "unknown family: " + gap_family);
    }
    auto j = certificate_json(cert);
    if (ell > 0) j["ell"] = ell;
    emit(j);
    return kExitOk;
  }

  if (bound->parsed()) {
    gapcert::BoundResult r;
    if (bound_theorem == "A" || bound_theorem == "B") {
      const auto cert = gapcert::certificate_from_delta0(bound_delta0);
      auto obs = gapcert::observable_from_norm(bound_norm);
      obs.sigma2 = bound_sigma2;
      r = bound_theorem == "A"
              ? gapcert::main_bound(cert, obs, bound_n, bound_a)
              : gapcert::variance_bound(cert, obs, bound_u, bound_n, bound_a);
    } else if (bound_theorem == "doeblin") {
      r = gapcert::doeblin_corollary_bound(bound_beta, bound_n, bound_a);
    } else if (bound_theorem == "bv") {
      r = gapcert::bv_corollary_bound(bound_ell, bound_norm_bv, bound_n,
                                      bound_a);
    } else {
      gapcert::fail("PARSE",
                    "unknown theorem (expected A, B, doeblin or bv): " +
                        bound_theorem);
    }
    emit(bound_json(r));
    if (!r.valid()) {
      std::cerr << "precondition violations:";
      for (const auto f : r.violated) std::cerr << ' ' << gapcert::flag_name(f);
      std::cerr << "\n";
      return kExitPrecondition;
    }
    return kExitOk;
  }

  if (plan->parsed()) {
    const auto cert = gapcert::certificate_from_delta0(plan_delta0);
    const auto obs = gapcert::observable_from_norm(plan_norm);
    const std::int64_t n = gapcert::plan_required_n(cert, obs, plan_a, plan_p);
    ordered_json j;
    j["n"] = n;
    j["threshold_n"] = gapcert::min_n_main(cert).exact_n;
    j["bound_at_n"] = gapcert::main_bound(cert, obs, n, plan_a).raw;
    emit(j);
    return kExitOk;
  }

  if (sim->parsed()) return run_simulate(sa);

  if (verify->parsed()) {
    gapcert::verify::Options opts;
    opts.quick = verify_quick;
    opts.seed = verify_seed;
    opts.threads = verify_threads;
    std::vector<gapcert::verify::CheckResult> results;
    if (verify_suite == "all") {
      results = gapcert::verify::run_all(opts, verify_full);
    } else if (verify_suite == "gap") {
      results = gapcert::verify::gap_properties(opts);
    } else if (verify_suite == "bounds") {
      results = gapcert::verify::bounds_properties(opts);
    } else if (verify_suite == "hypercube") {
      results = gapcert::verify::hypercube_properties(opts);
    } else if (verify_suite == "doeblin") {
      results = gapcert::verify::doeblin_properties(opts);
    } else if (verify_suite == "bernoulli") {
      results = gapcert::verify::bernoulli_properties(opts);
    } else {
      gapcert::fail("PARSE", "unknown suite: " + verify_suite);
    }
    bool all_pass = true;
    for (const auto& r : results) {
      all_pass = all_pass && r.pass;
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " ("
                << format_double(r.seconds) << " s) " << r.detail << "\n";
    }
    std::cout << (all_pass ? "all checks passed\n" : "CHECKS FAILED\n");
    return all_pass ? kExitOk : kExitPrecondition;
  }

  if (hist->parsed()) {
    const auto ifs = gapcert::bernoulli::make_ifs(hist_lambda);
    gapcert::bernoulli::HistogramParams hp;
    hp.bins = hist_bins;
    hp.runs = hist_runs;
    hp.n_points = hist_points;
    hp.seed = hist_seed;
    hp.start = hist_start;
    hp.threads = hist_threads;
    const auto h = gapcert::bernoulli::histogram(ifs, hp);
    std::ostringstream os;
    gapcert::io::write_histogram_csv(os, h);
    write_or_print(hist_out, os.str());
    return kExitOk;
  }

  if (consts->parsed()) {
    ordered_json j = ordered_json::array();
    for (std::size_t i = 0; i < gapcert::constants::kProvenanceCount; ++i) {
      const auto& c = gapcert::constants::kProvenance[i];
      j.push_back({{"name", c.name}, {"value", c.value}, {"role", c.role}});
    }
    emit(j);
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const gapcert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == "PARSE" ? kExitUsage : kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
