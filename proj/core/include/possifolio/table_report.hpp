#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "possifolio/harmony_search.hpp"

namespace possifolio {

struct GridCell {
  double lambda = 0.0;
  double eta = 0.0;
};

/// Cells with lambda = eta for each level.
std::vector<GridCell> diagonal_grid(const std::vector<double>& levels);
/// Full cartesian product of the levels.
std::vector<GridCell> cross_grid(const std::vector<double>& levels);

struct ReportOptions {
  QuantileMode mode = QuantileMode::exact;
  bool enforce_return_constraint = true;
  int seeds = 3;  // harmony-search replicas per cell
  std::uint64_t master_seed = 0;
  HSParams hs;  // hs.seed is overridden per (cell, replica)
  std::string instance_id;
};

struct CellResult {
  GridCell cell;
  ReducedLP lp;                      // as reduced, before any constraint drop
  Solution exact;
  std::vector<Solution> hs_runs;     // one per replica, seeded from the master seed
  std::optional<double> reference_ofv;
  std::string note;
  std::string error;                 // nonempty if the cell failed; other fields empty
};

struct TableReport {
  std::vector<CellResult> cells;
  ReportOptions options;

  /// Stable CSV: header row, one data row per (cell, replica), '.' decimal,
  /// 6 significant digits, vector fields joined with ';'. Byte-identical for
  /// identical inputs and master seed.
  std::string to_csv() const;
};

/// Solves every cell (exact + harmony-search replicas), attaches bundled
/// reference objective values where the instance and cell match the built-in
/// example, and records per-cell errors without aborting the run. Cells are
/// solved concurrently; results are deterministic in the master seed.
TableReport reproduce_table(const PortfolioInstance& inst, const std::vector<GridCell>& grid,
                            const ReportOptions& options);

/// True when the instance equals the bundled 5-asset example the reference
/// results were published for.
bool matches_reference_example(const PortfolioInstance& inst);

/// The bundled 5-asset example instance.
PortfolioInstance reference_example_instance();

}  // namespace possifolio
