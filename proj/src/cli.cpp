// SPDX-License-Identifier: MIT
#include "starwalk/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "starwalk/boundary.hpp"
#include "starwalk/csv.hpp"
#include "starwalk/kernels.hpp"
#include "starwalk/scattering.hpp"
#include "starwalk/simulate.hpp"
#include "starwalk/verify.hpp"

namespace starwalk {

namespace {

using nlohmann::json;

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    while (used < item.size() && std::isspace(item[used])) ++used;
    if (used != item.size())
      throw std::invalid_argument("cannot parse number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

GraphPoint parse_start(const std::string& s, int n_edges) {
  if (s == "vertex" || s == "v" || s.empty()) return GraphPoint::vertex();
  const std::vector<double> kx = parse_list(s);
  if (kx.size() != 2)
    throw std::invalid_argument(
        "start must be 'vertex' or 'edge,x' (e.g. 1,0.5)");
  const int k = static_cast<int>(kx[0]);
  if (k != kx[0] || k < 1 || k > n_edges)
    throw std::invalid_argument("start edge out of range");
  return GraphPoint::on_edge(k, kx[1]);
}

/// Everything the subcommands consume, after merging config file and flags
/// (a flag given on the command line wins over the config file, which wins
/// over the default).
struct Options {
  std::optional<double> a, c;
  std::optional<std::vector<double>> b;
  double t = 1.0;
  double lambda = 1.0;
  std::string start = "vertex";
  std::uint64_t n_paths = 10;
  double dt = 1e-4;
  double horizon = 1.0;
  std::uint64_t seed = 42;
  int threads = 0;
  std::string output;
  std::string estimator = "occupation";
  std::string suite = "primary";
  double k = 1.0;
  bool k_given = false;
  int points = 81;
  double ymax = 0.0;  // 0: automatic
};

json to_json(const Options& o) {
  json j;
  if (o.a) j["a"] = *o.a;
  if (o.b) j["b"] = *o.b;
  if (o.c) j["c"] = *o.c;
  j["t"] = o.t;
  j["lambda"] = o.lambda;
  j["start"] = o.start;
  j["n_paths"] = o.n_paths;
  j["dt"] = o.dt;
  j["horizon"] = o.horizon;
  j["seed"] = o.seed;
  j["threads"] = o.threads;
  j["output"] = o.output;
  j["estimator"] = o.estimator;
  j["suite"] = o.suite;
  if (o.k_given) j["k"] = o.k;
  j["points"] = o.points;
  j["ymax"] = o.ymax;
  return j;
}

ProcessParams require_process(const Options& o) {
  if (!o.a || !o.b || !o.c)
    throw std::invalid_argument(
        "boundary condition required: give --a, --b and --c (or a config "
        "file with keys a, b, c)");
  const StarGraph g(static_cast<int>(o.b->size()));
  return classify_boundary(g, BoundaryCondition{*o.a, *o.b, *o.c});
}

/// Resolve the output stream: --output file if given, else `fallback`.
class OutStream {
 public:
  OutStream(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_)
      throw std::invalid_argument("cannot open output file '" + path + "'");
    os_ = &file_;
  }
  std::ostream& get() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

void print_matrix(std::ostream& os, const Mat& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j)
      os << (j ? " " : "  ") << format_double(m(i, j));
    os << "\n";
  }
}

int cmd_kernel(const Options& o, std::ostream& out, bool resolvent_mode) {
  const ProcessParams p = require_process(o);
  const GraphPoint start =
      parse_start(o.start, p.n_edges);
  if (o.points < 2) throw std::invalid_argument("--points must be >= 2");

  const double arg = resolvent_mode ? o.lambda : o.t;
  const KernelMeasure km = resolvent_mode ? resolvent(p, start, arg)
                                          : transition(p, start, arg);
  double ymax = o.ymax;
  if (ymax <= 0.0)
    ymax = start.x + (resolvent_mode ? 10.0 / std::sqrt(2.0 * arg)
                                     : 5.0 * std::sqrt(arg));
  OutStream os(o.output, out);
  os.get() << (resolvent_mode ? "lambda" : "t") << ",edge,y,density\n";
  // Vertex atom reported as an edge-0 row (density column holds the mass).
  os.get() << format_double(arg) << ",0,0," << format_double(km.atom())
           << "\n";
  for (int m = 1; m <= p.n_edges; ++m)
    for (int i = 0; i <= o.points; ++i) {
      const double y = ymax * i / o.points;
      os.get() << format_double(arg) << "," << m << "," << format_double(y)
               << "," << format_double(km.density(m, y)) << "\n";
    }
  return 0;
}

int cmd_scatter(const Options& o, std::ostream& out) {
  const ProcessParams p = require_process(o);
  const Mat s = process_smatrix(p, o.lambda);
  out << "regime: " << regime_name(p.regime) << "\n";
  out << "lambda: " << format_double(o.lambda) << "\n";
  out << "S(lambda) =\n";
  print_matrix(out, s);
  out << "det(S) = " << format_double(det(s)) << "\n";
  const Mat s2 = s * s;
  out << "||S^2 - I||_inf = "
      << format_double(
             s2.max_abs_diff(Mat::identity(p.n_edges)))
      << "\n";
  if (p.regime == Regime::Sticky) {
    const StickySpectral sp = sticky_spectral(p);
    out << "bound state: energy = " << format_double(sp.energy)
        << ", decay rate = " << format_double(sp.decay_rate)
        << ", amplitude = " << format_double(sp.amplitude) << "\n";
    if (o.k_given) {
      out << "reflection phase at k = " << format_double(o.k) << ": "
          << format_double(reflection_phase(p, o.k)) << "\n";
      out << "time delay at k = " << format_double(o.k) << ": "
          << format_double(time_delay_eigenvalue(p, o.k)) << "\n";
    }
  } else if (o.k_given) {
    throw std::invalid_argument(
        "--k (reflection phase / time delay) applies to the sticky regime "
        "only");
  }
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const ProcessParams p = require_process(o);
  const GraphPoint start = parse_start(o.start, p.n_edges);
  SimConfig cfg;
  cfg.dt = o.dt;
  cfg.horizon = o.horizon;
  if (o.estimator == "occupation")
    cfg.estimator = LocalTimeEstimator::Occupation;
  else if (o.estimator == "downcrossing")
    cfg.estimator = LocalTimeEstimator::Downcrossing;
  else if (o.estimator == "bridge")
    cfg.estimator = LocalTimeEstimator::BridgeExact;
  else
    throw std::invalid_argument(
        "--estimator must be occupation, downcrossing or bridge");
  const std::vector<Trajectory> trajs =
      simulate_ensemble(p, start, cfg, o.n_paths, o.seed, 0, o.threads);
  OutStream os(o.output, out);
  write_trajectories_csv(os.get(), trajs);
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.suite != "primary")
    throw std::invalid_argument("unknown suite '" + o.suite +
                                "' (available: primary)");
  SuiteOptions so;
  so.seed = o.seed;
  so.n_threads = o.threads;
  const std::vector<TestReport> reports = run_primary_suite(so);
  for (const TestReport& r : reports)
    err << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
        << "  statistic=" << r.statistic << " bound=" << r.bound << "\n";
  OutStream os(o.output, out);
  os.get() << reports_to_json(reports) << "\n";
  return all_pass(reports) ? 0 : 2;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Brownian motions on a star graph: transition kernels, resolvents, "
      "scattering data, path simulation and statistical verification"};
  app.name("starwalk");
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path, b_str;
  double a_val = 0.0, c_val = 0.0;
  Options o;
  bool emit_config = false;

  app.add_option("--config", config_path,
                 "JSON config file; command-line flags override it");
  app.add_option("--a", a_val, "boundary condition: killing weight a");
  app.add_option("--b", b_str,
                 "boundary condition: comma-separated reflection weights "
                 "b_1,...,b_n (defines the number of edges)");
  app.add_option("--c", c_val, "boundary condition: stickiness weight c");
  app.add_option("--t", o.t, "time horizon of the transition kernel");
  app.add_option("--lambda", o.lambda, "spectral parameter lambda > 0");
  app.add_option("--start", o.start, "start point: 'vertex' or 'edge,x'");
  app.add_option("--n-paths", o.n_paths, "number of simulated paths");
  app.add_option("--dt", o.dt, "driver step size");
  app.add_option("--horizon", o.horizon, "simulation time horizon");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--threads", o.threads,
                 "worker threads (0: STARWALK_THREADS or hardware)");
  app.add_option("--output", o.output, "write output to this file");
  app.add_option("--estimator", o.estimator,
                 "local-time estimator: occupation|downcrossing|bridge");
  app.add_option("--suite", o.suite, "verification suite name");
  app.add_option("--k", o.k, "wavenumber for sticky scattering data");
  app.add_option("--points", o.points, "tabulation points per edge");
  app.add_option("--ymax", o.ymax, "tabulation range (0: automatic)");
  app.add_flag("--emit-effective-config", emit_config,
               "print the merged configuration as JSON and exit");

  CLI::App* kernel = app.add_subcommand(
      "kernel", "tabulate a transition kernel p_t(start, .) as CSV");
  CLI::App* resolvent_cmd = app.add_subcommand(
      "resolvent", "tabulate a resolvent kernel r_lambda(start, .) as CSV");
  CLI::App* scatter = app.add_subcommand(
      "scatter", "print the scattering matrix and spectral data");
  CLI::App* simulate = app.add_subcommand(
      "simulate", "simulate trajectories and write them as CSV");
  CLI::App* verify = app.add_subcommand(
      "verify", "run a statistical verification suite (JSON report)");

  try {
    std::vector<const char*> argv;
    argv.push_back("starwalk");
    for (const std::string& s : args) argv.push_back(s.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help and friends
      out << app.help() << "\n";
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    // Merge: flag > config file > default.
    json cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in)
        throw std::invalid_argument("cannot read config file '" +
                                    config_path + "'");
      try {
        in >> cfg;
      } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config file: ") + e.what());
      }
      if (!cfg.is_object())
        throw std::invalid_argument("config file must hold a JSON object");
    }
    auto given = [&](const char* f) { return app.count(f) > 0; };
    auto merge_num = [&](const char* flag, const char* key, auto& slot) {
      if (!given(flag) && cfg.contains(key))
        slot = cfg[key].get<std::decay_t<decltype(slot)>>();
    };
    if (given("--a")) o.a = a_val;
    else if (cfg.contains("a")) o.a = cfg["a"].get<double>();
    if (given("--c")) o.c = c_val;
    else if (cfg.contains("c")) o.c = cfg["c"].get<double>();
    if (given("--b")) o.b = parse_list(b_str);
    else if (cfg.contains("b")) o.b = cfg["b"].get<std::vector<double>>();
    merge_num("--t", "t", o.t);
    merge_num("--lambda", "lambda", o.lambda);
    merge_num("--start", "start", o.start);
    merge_num("--n-paths", "n_paths", o.n_paths);
    merge_num("--dt", "dt", o.dt);
    merge_num("--horizon", "horizon", o.horizon);
    merge_num("--seed", "seed", o.seed);
    merge_num("--threads", "threads", o.threads);
    merge_num("--output", "output", o.output);
    merge_num("--estimator", "estimator", o.estimator);
    merge_num("--suite", "suite", o.suite);
    merge_num("--points", "points", o.points);
    merge_num("--ymax", "ymax", o.ymax);
    o.k_given = given("--k") || cfg.contains("k");
    merge_num("--k", "k", o.k);

    if (emit_config) {
      out << to_json(o).dump(2) << "\n";
      return 0;
    }

    if (kernel->parsed()) return cmd_kernel(o, out, false);
    if (resolvent_cmd->parsed()) return cmd_kernel(o, out, true);
    if (scatter->parsed()) return cmd_scatter(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
    err << "error: no subcommand given\n";
    return 1;
  } catch (const std::exception& e) {
    // Anything that stopped a command from running -- bad flags, bad
    // configs, invalid parameters, I/O failures -- is a validation error.
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace starwalk
