// qbaf command-line front end.
// Exit codes: 0 success/converged, 1 input error, 2 no convergence,
// 3 property violations found.

#include "qbaf/qbaf.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace qbaf;

enum Exit { Ok = 0, InputError = 1, NotConverged = 2, Violations = 3 };

struct SolveFlags {
  std::string semantics = "discrete";
  double delta = 1e-6;
  Index max_iter = 10000;
  double step = 0.05;
  double max_time = 1000;
  Index window = 2;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--semantics", f.semantics, "discrete or continuous")
      ->check(CLI::IsMember({"discrete", "continuous"}))
      ->capture_default_str();
  cmd->add_option("--delta", f.delta, "stopping tolerance")->capture_default_str();
  cmd->add_option("--max-iter", f.max_iter, "discrete iteration cap")->capture_default_str();
  cmd->add_option("--step", f.step, "RK4 step size")->capture_default_str();
  cmd->add_option("--max-time", f.max_time, "continuous time horizon")->capture_default_str();
  cmd->add_option("--window", f.window, "oscillation check distance in steps, 0 = off")->capture_default_str();
}

SolveReport<double> run_solver(const Qbaf& q, const SolveFlags& f, bool trajectory) {
  if (f.semantics == "continuous") {
    IntegrationConfig<double> c{f.step, f.delta, f.max_time, trajectory};
    return integrate(q, c);
  }
  IterationConfig<double> c{f.delta, f.max_iter, trajectory, f.window};
  return iterate(q, c);
}

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void print_report(std::ostream& out, const Qbaf& q, const SolveReport<double>& r) {
  out << "status " << to_string(r.status) << "\n";
  out << "steps " << r.steps << "\n";
  out << "residual " << format_double(r.residual) << "\n";
  for (ArgumentId a = 0; a < q.size(); ++a) {
    const auto v = r.interpretation[a];
    out << q.label(a) << " " << (v ? format_double(*v) : std::string("⊥")) << "\n";
  }
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::SinkUnavailable, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error(ErrorKind::SinkUnavailable, "write to '" + path + "' failed");
}

int cmd_solve(const std::string& file, const SolveFlags& f) {
  const Qbaf q = read_qbaf_file(file);
  const auto r = run_solver(q, f, false);
  print_report(std::cout, q, r);
  return r.converged() ? Ok : NotConverged;
}

int cmd_trace(const std::string& file, const SolveFlags& f, const std::string& out) {
  const Qbaf q = read_qbaf_file(file);
  const auto r = run_solver(q, f, true);
  if (out.empty() || out == "-") {
    write_trajectory(r, q.labels(), std::cout);
  } else {
    write_trajectory(r, q.labels(), std::filesystem::path(out));
    std::cout << "status " << to_string(r.status) << "\n" << "steps " << r.steps << "\n";
  }
  return r.converged() ? Ok : NotConverged;
}

int cmd_analyze(const std::string& file, double epsilon) {
  const Qbaf q = read_qbaf_file(file);
  const auto g = analyze(q);
  const double wp = g.max_weight * static_cast<double>(g.max_parents);
  std::cout << "acyclic " << (g.acyclic ? "yes" : "no") << "\n";
  std::cout << "max_parents " << g.max_parents << "\n";
  std::cout << "max_weight " << fmt(g.max_weight) << "\n";
  std::cout << "W*P " << fmt(wp) << "\n";
  std::cout << "contraction " << fmt(g.contraction) << "\n";
  if (g.acyclic)
    std::cout << "verdict guaranteed (acyclic), linear-time evaluation\n";
  else if (g.guaranteed)
    std::cout << "verdict guaranteed, W*P = " << fmt(wp) << " < 4\n";
  else
    std::cout << "verdict not guaranteed, W*P = " << fmt(wp) << "\n";
  const auto bound = iteration_bound(epsilon, g);
  std::cout << "epsilon " << format_double(epsilon) << "\n";
  std::cout << "iteration_bound " << (bound ? std::to_string(*bound) : std::string("n/a")) << "\n";
  return Ok;
}

int cmd_check(const std::string& file) {
  const Qbaf q = read_qbaf_file(file);
  std::cout << "ok " << q.size() << " arguments, " << q.edges().size() << " edges\n";
  return Ok;
}

struct PropertyFlags {
  std::string file;
  Index random = 0;
  std::uint64_t seed = 0;
  Index min_args = 1;
  Index max_args = 10;
  unsigned jobs = 1;
  bool inject = false;
  bool skip_extreme = false;
  std::string semantics = "discrete";
  double epsilon = 1e-4;
};

int cmd_properties(const PropertyFlags& f) {
  PropertyConfig cfg;
  cfg.eq_tolerance = f.epsilon;
  cfg.seed = f.seed;
  cfg.skip_extreme_targets = f.skip_extreme;
  if (f.random > 0) {
    SuiteParams p;
    p.instances = f.random;
    p.seed = f.seed;
    p.min_args = f.min_args;
    p.max_args = f.max_args;
    p.jobs = f.jobs;
    p.inject_faults = f.inject;
    p.property = cfg;
    const auto s = run_suite(p);
    std::cout << "instances " << s.instances << " checked " << s.checked << " unsolved " << s.unsolved << "\n";
    std::cout << "property holds vacuous violated witnesses\n";
    for (auto id : all_properties) {
      const auto& t = s.tally[static_cast<std::size_t>(id)];
      std::cout << to_string(id) << " " << t.holds << " " << t.vacuous << " " << t.violated << " " << t.witnesses << "\n";
    }
    for (auto id : all_properties) {
      const auto& t = s.tally[static_cast<std::size_t>(id)];
      if (t.first_counterexample) std::cout << "counterexample " << to_string(id) << ": " << *t.first_counterexample << "\n";
    }
    if (f.inject) std::cout << "injected " << s.injected << " flagged " << s.flagged << "\n";
    std::cout << "violations " << s.total_violations() << "\n";
    return s.total_violations() == 0 ? Ok : Violations;
  }

  if (f.file.empty()) throw Error(ErrorKind::InvalidConfig, "give a .qbaf file or --random N");
  const Qbaf q = read_qbaf_file(f.file);
  if (!has_unit_weights(q)) throw Error(ErrorKind::NonUnitWeights, "property checks need every weight to be -1 or +1");
  cfg.semantics = f.semantics == "continuous" ? Semantics::Continuous : Semantics::Discrete;
  const auto r = solve(q, cfg.semantics, cfg);
  if (!r.converged()) {
    std::cout << "status " << to_string(r.status) << "\n";
    return NotConverged;
  }
  Index violations = 0;
  for (const auto& v : check_all(q, r.interpretation, cfg)) {
    std::cout << to_string(v.property) << " " << to_string(v.status) << " witnesses=" << v.witnesses_checked << "\n";
    if (v.counterexample) std::cout << "  " << *v.counterexample << "\n";
    violations += v.status == VerdictStatus::Violated;
  }
  std::cout << "violations " << violations << "\n";
  return violations == 0 ? Ok : Violations;
}

double max_gap(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return x.size() == 0 ? 0.0 : (x - y).cwiseAbs().maxCoeff();
}

int cmd_translate(bool to_mlp, const std::string& in, const std::string& out, bool verify) {
  if (to_mlp) {
    const Qbaf q = read_qbaf_file(in);
    const auto t = qbaf_to_mlp(q);
    emit(out, serialize_mlp(t.mlp, t.inputs));
    if (verify) {
      const auto node_values = forward(t.mlp, t.inputs);
      Eigen::VectorXd via_mlp(q.size());
      for (ArgumentId a = 0; a < q.size(); ++a) via_mlp[a] = node_values[t.node_of_argument[a]];
      std::cerr << "verify residual " << format_double(max_gap(via_mlp, solve_acyclic(q).values())) << "\n";
    }
    return Ok;
  }
  const auto doc = parse_mlp(read_text_file(in));
  if (!doc.inputs) throw Error(ErrorKind::MissingInput, "'" + in + "' has no input records");
  const Qbaf q = mlp_to_qbaf(doc.mlp, *doc.inputs);
  emit(out, serialize_qbaf(q));
  if (verify) {
    const auto node_values = forward(doc.mlp, *doc.inputs);
    Eigen::VectorXd via_mlp(q.size());
    Index a = 0;
    for (Index node = 0; node < doc.mlp.size(); ++node)
      if (!doc.mlp.is_relay(node)) via_mlp[a++] = node_values[node];
    std::cerr << "verify residual " << format_double(max_gap(via_mlp, solve_acyclic(q).values())) << "\n";
  }
  return Ok;
}

std::map<std::string, double> parse_assignments(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidConfig, "expected name=value, got '" + item + "'");
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() - eq - 1) throw Error(ErrorKind::InvalidConfig, "bad number in '" + item + "'");
    out[item.substr(0, eq)] = v;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-weighted QBAF toolkit (MLP-based semantics)"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  SolveFlags sf;
  std::string file, out;
  double epsilon = 1e-6;

  auto* solve_cmd = app.add_subcommand("solve", "solve a .qbaf file and print strengths");
  solve_cmd->add_option("file", file)->required();
  add_solve_flags(solve_cmd, sf);

  auto* trace_cmd = app.add_subcommand("trace", "write the strength trajectory as CSV");
  trace_cmd->add_option("file", file)->required();
  trace_cmd->add_option("--out", out, "CSV path (stdout if omitted)");
  add_solve_flags(trace_cmd, sf);

  auto* analyze_cmd = app.add_subcommand("analyze", "report the convergence guarantee");
  analyze_cmd->add_option("file", file)->required();
  analyze_cmd->add_option("--epsilon", epsilon, "target accuracy for the iteration bound")->capture_default_str();

  auto* check_cmd = app.add_subcommand("check", "parse and validate a .qbaf file");
  check_cmd->add_option("file", file)->required();

  PropertyFlags pf;
  auto* prop_cmd = app.add_subcommand("properties", "check the semantical properties");
  prop_cmd->add_option("file", pf.file);
  prop_cmd->add_option("--random", pf.random, "number of random instances");
  prop_cmd->add_option("--seed", pf.seed)->capture_default_str();
  prop_cmd->add_option("--min-args", pf.min_args)->capture_default_str();
  prop_cmd->add_option("--max-args", pf.max_args)->capture_default_str();
  prop_cmd->add_option("--jobs", pf.jobs, "worker threads")->capture_default_str();
  prop_cmd->add_option("--epsilon", pf.epsilon, "equality tolerance")->capture_default_str();
  prop_cmd->add_option("--semantics", pf.semantics, "engine for a file argument")
      ->check(CLI::IsMember({"discrete", "continuous"}))
      ->capture_default_str();
  prop_cmd->add_flag("--skip-extreme-targets", pf.skip_extreme,
                     "leave beta in {0,1} targets out of Weakening/Strengthening (reporting only)");
  prop_cmd->add_flag("--inject-fault", pf.inject)->group("");

  bool to_mlp = false, from_mlp = false, verify = false;
  std::string in;
  auto* tr_cmd = app.add_subcommand("translate", "convert between .qbaf and .mlp");
  auto* to_opt = tr_cmd->add_flag("--to-mlp", to_mlp);
  auto* from_opt = tr_cmd->add_flag("--from-mlp", from_mlp);
  to_opt->excludes(from_opt);
  tr_cmd->add_option("in", in)->required();
  tr_cmd->add_option("out", out, "output path (stdout if omitted or -)");
  tr_cmd->add_flag("--verify", verify, "print the max strength gap between both forms");

  auto* gen_cmd = app.add_subcommand("gen", "generate example QBAFs");
  gen_cmd->require_subcommand(1);
  gen_cmd->add_option("--out", out, "output path (stdout if omitted)");

  double scale = 1.0;
  std::vector<std::string> base;
  auto* stock_cmd = gen_cmd->add_subcommand("stock", "stock-trading example");
  stock_cmd->add_option("--scale", scale)->capture_default_str();
  stock_cmd->add_option("--base", base, "name=value base score overrides");
  stock_cmd->add_option("--out", out);

  Index nb = 3, ng = 3;
  double bb = 0.5, bg = 0.4, ws = 0.7;
  auto* div_cmd = gen_cmd->add_subcommand("divergence", "complete two-colour family");
  div_cmd->add_option("n_blue", nb)->required();
  div_cmd->add_option("n_green", ng)->required();
  div_cmd->add_option("beta_blue", bb)->required();
  div_cmd->add_option("beta_green", bg)->required();
  div_cmd->add_option("weight", ws)->required();
  div_cmd->add_option("--out", out);

  RandomQbafParams rp;
  bool cyclic = false;
  double bound = 0;
  auto* rnd_cmd = gen_cmd->add_subcommand("random", "random QBAF");
  rnd_cmd->add_option("--n", rp.n_args)->capture_default_str();
  rnd_cmd->add_option("--density", rp.edge_density)->capture_default_str();
  rnd_cmd->add_flag("--cyclic", cyclic);
  rnd_cmd->add_option("--bound", bound, "weights in (0, bound] with random sign; unit weights if omitted");
  rnd_cmd->add_option("--max-in-degree", rp.max_in_degree)->capture_default_str();
  rnd_cmd->add_option("--grid", rp.base_grid, "base score grid step")->capture_default_str();
  rnd_cmd->add_option("--seed", rp.seed)->capture_default_str();
  rnd_cmd->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : InputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(file, sf);
    if (*trace_cmd) return cmd_trace(file, sf, out);
    if (*analyze_cmd) return cmd_analyze(file, epsilon);
    if (*check_cmd) return cmd_check(file);
    if (*prop_cmd) return cmd_properties(pf);
    if (*tr_cmd) {
      if (to_mlp == from_mlp) throw Error(ErrorKind::InvalidConfig, "pass exactly one of --to-mlp / --from-mlp");
      return cmd_translate(to_mlp, in, out, verify);
    }
    if (*gen_cmd) {
      const Qbaf q = [&] {
        if (*stock_cmd) return stock_example(scale, parse_assignments(base));
        if (*div_cmd) return divergence_family(nb, ng, bb, bg, ws);
        rp.acyclic = !cyclic;
        if (bound > 0) rp.weight_mode = WeightMode::bounded(bound);
        return random_qbaf(rp);
      }();
      emit(out, serialize_qbaf(q));
      return Ok;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return InputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return InputError;
  }
  return InputError;
}
