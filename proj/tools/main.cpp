// possifolio command line: reduce fuzzy-random portfolio instances to
// deterministic LPs, solve them exactly or with harmony search, validate the
// reduction by simulation, and reproduce the bundled reference table.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "possifolio/exact_solver.hpp"
#include "possifolio/harmony_search.hpp"
#include "possifolio/mc_validator.hpp"
#include "possifolio/table_report.hpp"

namespace {

using namespace possifolio;

std::string fmt_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_vector(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt_g6(v[i]);
  }
  out += ")";
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file '" + out_path + "'");
  out << text;
}

struct Options {
  std::string instance_path;
  std::string lp_path;
  double lambda = 0.1;
  double eta = 0.1;
  std::string quantile_mode = "exact";
  bool ignore_return_constraint = false;
  std::uint64_t seed = 0;
  int seeds = 3;
  std::string grid = "0.1,0.4,0.7,0.9";
  bool cross = false;
  std::int64_t samples = 100000;
  std::string out_path;
  std::string trace_path;
  HSParams hs;
};

QuantileMode parse_mode(const std::string& name) {
  if (name == "exact") return QuantileMode::exact;
  if (name == "paper-2dp") return QuantileMode::rounded_2dp;
  throw std::runtime_error("unknown quantile mode '" + name + "'");
}

std::vector<double> parse_levels(const std::string& grid) {
  std::vector<double> levels;
  std::stringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::runtime_error("bad grid level '" + item + "'");
    levels.push_back(v);
  }
  return levels;
}

PortfolioInstance load_checked(const std::string& path) {
  PortfolioInstance inst = load_instance(path);
  const std::vector<std::string> violations = validate(inst);
  if (!violations.empty()) {
    std::string msg = "invalid instance '" + path + "':";
    for (const std::string& v : violations) msg += "\n  - " + v;
    throw std::runtime_error(msg);
  }
  return inst;
}

void print_solution(std::ostream& os, const Solution& s) {
  os << "solver: " << s.solver << "\n";
  os << "status: " << to_string(s.status) << "\n";
  os << "objective: " << fmt_g6(s.objective) << "\n";
  if (s.status == SolveStatus::infeasible && s.violation > 0.0 &&
      s.violation != std::numeric_limits<double>::infinity())
    os << "violation: " << fmt_g6(s.violation) << "\n";
  os << "x: " << format_vector(s.x) << "\n";
}

ReducedLP reduced_lp_for(const Options& opt) {
  if (!opt.lp_path.empty()) return load_lp(opt.lp_path);
  if (opt.instance_path.empty())
    throw std::runtime_error("either --instance (with --lambda/--eta) or --lp is required");
  const PortfolioInstance inst = load_checked(opt.instance_path);
  return reduce(inst, ChanceLevels(opt.lambda, opt.eta), parse_mode(opt.quantile_mode),
                opt.instance_path);
}

int run_reduce(const Options& opt) {
  const PortfolioInstance inst = load_checked(opt.instance_path);
  const ReducedLP lp = reduce(inst, ChanceLevels(opt.lambda, opt.eta),
                              parse_mode(opt.quantile_mode), opt.instance_path);
  write_output(serialize_lp(lp), opt.out_path);
  return 0;
}

int run_solve_exact(const Options& opt) {
  ReducedLP lp = reduced_lp_for(opt);
  if (opt.ignore_return_constraint) lp = lp.without_return_constraint();
  std::ostringstream os;
  print_solution(os, solve_exact(lp));
  write_output(os.str(), opt.out_path);
  return 0;
}

int run_solve_hs(const Options& opt) {
  ReducedLP lp = reduced_lp_for(opt);
  if (opt.ignore_return_constraint) lp = lp.without_return_constraint();
  HSParams params = opt.hs;
  params.seed = opt.seed;
  const HSResult result = solve_hs(lp, params);
  std::ostringstream os;
  print_solution(os, result.solution);
  os << "iterations: " << params.max_improvisations << "\n";
  os << "seed: " << params.seed << "\n";
  write_output(os.str(), opt.out_path);
  if (!opt.trace_path.empty()) {
    std::ostringstream trace;
    trace << "iteration,best_objective,best_violation\n";
    for (const TracePoint& p : result.trace)
      trace << p.iteration << "," << fmt_g6(p.objective) << "," << fmt_g6(p.violation) << "\n";
    write_output(trace.str(), opt.trace_path);
  }
  return 0;
}

int run_validate_mc(const Options& opt) {
  const PortfolioInstance inst = load_checked(opt.instance_path);
  const QuantileMode mode = parse_mode(opt.quantile_mode);
  const ReducedLP lp =
      reduce(inst, ChanceLevels(opt.lambda, opt.eta), mode, opt.instance_path);
  const Solution exact = solve_exact(lp);

  std::ostringstream os;
  os << "allocation: " << format_vector(exact.x) << "\n";

  auto report = [&](const char* label, const ChanceEstimate& est, double analytic) {
    const double tolerance = std::max(est.half_width, 1e-9);
    const char* verdict = std::abs(est.p_hat - analytic) <= tolerance ? "PASS" : "FAIL";
    os << label << ": p_hat=" << fmt_g6(est.p_hat) << " half_width=" << fmt_g6(est.half_width)
       << " analytic=" << fmt_g6(analytic) << " verdict=" << verdict << "\n";
  };

  const double f = exact.objective;
  report("objective-chance",
         estimate_objective_chance(inst, exact.x, f, opt.eta, opt.samples, opt.seed),
         analytic_objective_chance(inst, exact.x, f, opt.eta));
  report("constraint-chance",
         estimate_constraint_chance(inst, exact.x, opt.eta, opt.samples, derive_stream(opt.seed, 1)),
         analytic_constraint_chance(inst, exact.x, opt.eta));
  write_output(os.str(), opt.out_path);
  return 0;
}

int run_reproduce_table(const Options& opt) {
  const PortfolioInstance inst = load_checked(opt.instance_path);
  const std::vector<double> levels = parse_levels(opt.grid);
  const std::vector<GridCell> cells = opt.cross ? cross_grid(levels) : diagonal_grid(levels);
  ReportOptions options;
  options.mode = parse_mode(opt.quantile_mode);
  options.enforce_return_constraint = !opt.ignore_return_constraint;
  options.seeds = opt.seeds;
  options.master_seed = opt.seed;
  options.hs = opt.hs;
  options.instance_id = opt.instance_path;
  write_output(reproduce_table(inst, cells, options).to_csv(), opt.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy-random portfolio selection toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_instance = [&](CLI::App* cmd, bool required = true) {
    auto* o = cmd->add_option("--instance", opt.instance_path, "instance file");
    if (required) o->required();
    return o;
  };
  auto add_levels = [&](CLI::App* cmd, bool required = true) {
    auto* l = cmd->add_option("--lambda", opt.lambda, "probability level in (0,1)");
    auto* e = cmd->add_option("--eta", opt.eta, "possibility level in (0,1]");
    if (required) {
      l->required();
      e->required();
    }
  };
  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--quantile-mode", opt.quantile_mode, "exact | paper-2dp")
        ->check(CLI::IsMember({"exact", "paper-2dp"}));
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "random seed")->envname("POSSIFOLIO_SEED");
  };
  auto add_hs_params = [&](CLI::App* cmd) {
    cmd->add_option("--hms", opt.hs.hms, "harmony memory size");
    cmd->add_option("--hmcr", opt.hs.hmcr, "memory consideration rate");
    cmd->add_option("--par", opt.hs.par, "pitch adjustment rate");
    cmd->add_option("--fw-frac", opt.hs.fw_frac, "fret width as a fraction of each bound");
    cmd->add_option("--iters", opt.hs.max_improvisations, "improvisation count");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_path, "output file (default stdout)");
  };

  CLI::App* reduce_cmd =
      app.add_subcommand("reduce", "emit the deterministic LP for an instance and levels");
  add_instance(reduce_cmd);
  add_levels(reduce_cmd);
  add_mode(reduce_cmd);
  add_out(reduce_cmd);

  CLI::App* exact_cmd =
      app.add_subcommand("solve-exact", "solve the reduced LP with the greedy exact solver");
  add_instance(exact_cmd, false);
  exact_cmd->add_option("--lp", opt.lp_path, "previously emitted LP file");
  add_levels(exact_cmd, false);
  add_mode(exact_cmd);
  exact_cmd->add_flag("--ignore-return-constraint", opt.ignore_return_constraint,
                      "drop the return constraint");
  add_out(exact_cmd);

  CLI::App* hs_cmd = app.add_subcommand("solve-hs", "solve the reduced LP with harmony search");
  add_instance(hs_cmd, false);
  hs_cmd->add_option("--lp", opt.lp_path, "previously emitted LP file");
  add_levels(hs_cmd, false);
  add_mode(hs_cmd);
  hs_cmd->add_flag("--ignore-return-constraint", opt.ignore_return_constraint,
                   "drop the return constraint");
  add_seed(hs_cmd);
  add_hs_params(hs_cmd);
  hs_cmd->add_option("--trace", opt.trace_path, "write best-objective trace CSV here");
  add_out(hs_cmd);

  CLI::App* mc_cmd = app.add_subcommand(
      "validate-mc", "check the chance-constraint reduction against simulation");
  add_instance(mc_cmd);
  add_levels(mc_cmd);
  add_mode(mc_cmd);
  add_seed(mc_cmd);
  mc_cmd->add_option("--samples", opt.samples, "Monte Carlo sample count");
  add_out(mc_cmd);

  CLI::App* table_cmd = app.add_subcommand(
      "reproduce-table", "solve a grid of (lambda, eta) cells and emit a CSV report");
  add_instance(table_cmd);
  table_cmd->add_option("--grid", opt.grid, "comma-separated levels (default diagonal cells)");
  table_cmd->add_flag("--cross", opt.cross, "expand the levels to the full cartesian grid");
  add_mode(table_cmd);
  table_cmd->add_flag("--ignore-return-constraint", opt.ignore_return_constraint,
                      "drop the return constraint");
  add_seed(table_cmd);
  table_cmd->add_option("--seeds", opt.seeds, "harmony-search replicas per cell");
  add_hs_params(table_cmd);
  add_out(table_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (reduce_cmd->parsed()) return run_reduce(opt);
    if (exact_cmd->parsed()) return run_solve_exact(opt);
    if (hs_cmd->parsed()) return run_solve_hs(opt);
    if (mc_cmd->parsed()) return run_validate_mc(opt);
    if (table_cmd->parsed()) return run_reproduce_table(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
