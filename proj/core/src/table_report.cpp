#include "possifolio/table_report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <thread>

namespace possifolio {

namespace {

std::string fmt_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string join_g6(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += fmt_g6(v[i]);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

struct ReferenceCell {
  double level;
  double ofv;
};

// Published diagonal results for the bundled example (2-decimal quantiles).
constexpr ReferenceCell kReferenceCells[] = {
    {0.1, 451.22}, {0.4, 331.85}, {0.7, 244.39}, {0.9, 164.44}};

std::optional<double> reference_ofv_for(const GridCell& cell) {
  if (!near(cell.lambda, cell.eta)) return std::nullopt;
  for (const ReferenceCell& r : kReferenceCells)
    if (near(cell.lambda, r.level)) return r.ofv;
  return std::nullopt;
}

std::string note_for(const GridCell& cell, const ReportOptions& opt, const Solution& exact) {
  std::string note;
  auto add = [&](const std::string& s) {
    if (!note.empty()) note += "; ";
    note += s;
  };
  if (opt.mode == QuantileMode::rounded_2dp) {
    if (near(cell.lambda, 0.4))
      add("reference table lists x1 and x2 transposed; the optimum puts 60 on asset 1 and 0 on asset 2");
    if (near(cell.lambda, 0.7))
      add("reference value 244.39 is below the exact optimum and not reproducible from the published data");
  }
  if (near(cell.lambda, 0.9)) {
    if (opt.enforce_return_constraint && exact.status == SolveStatus::infeasible)
      add("return constraint unsatisfiable at this level (rhs exceeds the attainable objective)");
    if (!opt.enforce_return_constraint)
      add("reference value reproduced with the return constraint dropped");
  }
  return note;
}

CellResult solve_cell(const PortfolioInstance& inst, const GridCell& cell,
                      const ReportOptions& opt, std::size_t cell_index, bool reference_instance) {
  CellResult out;
  out.cell = cell;
  try {
    const ChanceLevels levels(cell.lambda, cell.eta);
    out.lp = reduce(inst, levels, opt.mode, opt.instance_id);
    const ReducedLP lp_solve =
        opt.enforce_return_constraint ? out.lp : out.lp.without_return_constraint();
    out.exact = solve_exact(lp_solve);
    out.hs_runs.reserve(static_cast<std::size_t>(opt.seeds));
    for (int r = 0; r < opt.seeds; ++r) {
      HSParams hs = opt.hs;
      hs.seed = derive_stream(opt.master_seed, cell_index, static_cast<std::uint64_t>(r));
      out.hs_runs.push_back(solve_hs(lp_solve, hs).solution);
    }
    if (reference_instance) {
      out.reference_ofv = reference_ofv_for(cell);
      if (out.reference_ofv) out.note = note_for(cell, opt, out.exact);
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<GridCell> diagonal_grid(const std::vector<double>& levels) {
  std::vector<GridCell> cells;
  cells.reserve(levels.size());
  for (double v : levels) cells.push_back({v, v});
  return cells;
}

std::vector<GridCell> cross_grid(const std::vector<double>& levels) {
  std::vector<GridCell> cells;
  cells.reserve(levels.size() * levels.size());
  for (double lambda : levels)
    for (double eta : levels) cells.push_back({lambda, eta});
  return cells;
}

PortfolioInstance reference_example_instance() {
  PortfolioInstance inst;
  inst.budget = 200.0;
  inst.distribution = ScalarDistribution::standard_normal();
  inst.assets = {
      {1.2, 1.35, 0.5, 0.15, 0.15},
      {1.25, 1.3, 0.6, 0.1, 0.1},
      {1.35, 1.45, 0.55, 0.2, 0.2},
      {1.25, 1.35, 0.4, 0.15, 0.15},
      {1.4, 1.5, 0.5, 0.2, 0.2},
  };
  inst.upper_bounds = {60.0, 60.0, 60.0, 60.0, 60.0};
  inst.target = {250.0, 250.0, 50.0, 40.0, 40.0};
  return inst;
}

bool matches_reference_example(const PortfolioInstance& inst) {
  const PortfolioInstance ref = reference_example_instance();
  if (inst.assets.size() != ref.assets.size() || inst.budget != ref.budget) return false;
  if (inst.distribution.kind() != ScalarDistribution::Kind::standard_normal) return false;
  auto same = [](const FuzzyRandomReturn& a, const FuzzyRandomReturn& b) {
    return a.peak_lo_base == b.peak_lo_base && a.peak_hi_base == b.peak_hi_base &&
           a.peak_shift == b.peak_shift && a.spread_left == b.spread_left &&
           a.spread_right == b.spread_right &&
           a.left_ref.kind() == ReferenceFunction::Kind::linear &&
           a.right_ref.kind() == ReferenceFunction::Kind::linear;
  };
  for (std::size_t j = 0; j < ref.assets.size(); ++j) {
    if (!same(inst.assets[j], ref.assets[j])) return false;
    if (inst.upper_bounds[j] != ref.upper_bounds[j]) return false;
  }
  return same(inst.target, ref.target);
}

TableReport reproduce_table(const PortfolioInstance& inst, const std::vector<GridCell>& grid,
                            const ReportOptions& options) {
  if (options.seeds < 1) throw std::invalid_argument("reproduce_table: seeds must be >= 1");
  const bool reference_instance = matches_reference_example(inst);
  TableReport report;
  report.options = options;
  report.cells.resize(grid.size());

  if (grid.empty()) return report;
  // Bounded pool; each cell owns its slot and its derived seeds, so results
  // do not depend on scheduling.
  const unsigned workers = std::min<unsigned>(
      std::max(1u, std::thread::hardware_concurrency()), static_cast<unsigned>(grid.size()));
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
      report.cells[i] = solve_cell(inst, grid[i], options, i, reference_instance);
  };
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) futures.push_back(std::async(std::launch::async, drain));
  for (auto& f : futures) f.get();
  return report;
}

std::string TableReport::to_csv() const {
  std::ostringstream out;
  out << "lambda,eta,quantile_mode,return_constraint,coefficients,rhs,"
         "exact_status,exact_objective,exact_x,seed_index,hs_status,hs_objective,hs_x,"
         "hs_gap_vs_exact,reference_ofv,exact_minus_reference,note,error\n";
  const std::string mode = quantile_mode_name(options.mode);
  const std::string constraint = options.enforce_return_constraint ? "enforced" : "ignored";
  for (const CellResult& cell : cells) {
    const std::string prefix = fmt_g6(cell.cell.lambda) + "," + fmt_g6(cell.cell.eta) + "," +
                               mode + "," + constraint + ",";
    if (!cell.error.empty()) {
      out << prefix << ",,,,,,,,,,,,," << csv_field(cell.error) << "\n";  // 13 empty fields
      continue;
    }
    const std::string shared =
        prefix + join_g6(cell.lp.c) + "," + fmt_g6(cell.lp.rhs) + "," +
        to_string(cell.exact.status) + "," + fmt_g6(cell.exact.objective) + "," +
        join_g6(cell.exact.x) + ",";
    const std::string reference =
        cell.reference_ofv ? fmt_g6(*cell.reference_ofv) : std::string{};
    const std::string exact_delta =
        cell.reference_ofv ? fmt_g6(cell.exact.objective - *cell.reference_ofv) : std::string{};
    for (std::size_t r = 0; r < cell.hs_runs.size(); ++r) {
      const Solution& hs = cell.hs_runs[r];
      out << shared << r << "," << to_string(hs.status) << "," << fmt_g6(hs.objective) << ","
          << join_g6(hs.x) << "," << fmt_g6(cell.exact.objective - hs.objective) << ","
          << reference << "," << exact_delta << "," << csv_field(cell.note) << ",\n";
    }
  }
  return out.str();
}

}  // namespace possifolio
