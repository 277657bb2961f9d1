#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "possifolio/exact_solver.hpp"
#include "possifolio/rng.hpp"

namespace possifolio {

/// Harmony search parameters. `fret_widths` may be left empty, in which case
/// each variable gets fw_frac * bound. The *_final fields switch on linear
/// schedules from the base value to the final one over the run; off by
/// default.
struct HSParams {
  int hms = 6;         // harmony memory size
  double hmcr = 0.9;   // memory consideration rate
  double par = 0.5;    // pitch adjustment rate
  std::vector<double> fret_widths;
  double fw_frac = 0.05;
  int max_improvisations = 10000;
  std::uint64_t seed = 0;
  std::optional<double> hmcr_final;
  std::optional<double> par_final;
  std::optional<double> fw_scale_final;
};

struct CandidateEval {
  double objective = 0.0;
  double violation = 0.0;  // max(0, rhs - objective)
  bool feasible() const { return violation <= 0.0; }
};

CandidateEval evaluate(const ReducedLP& lp, const Allocation& x);

/// Feasibility-first ordering: any feasible candidate beats any infeasible
/// one, infeasible candidates compare by smaller violation, feasible ones by
/// larger objective. `greater` means the first argument is better.
std::strong_ordering compare(const CandidateEval& a, const CandidateEval& b);

inline bool is_better(const CandidateEval& a, const CandidateEval& b) {
  return compare(a, b) == std::strong_ordering::greater;
}

/// Projects x onto {0 <= x <= bounds, sum(x) = budget}: scale towards the
/// budget, clamp, redistribute any deficit over non-saturated coordinates
/// proportionally to remaining headroom, and absorb the float residual into
/// the loosest coordinate. Requires sum(bounds) >= budget > 0. Deterministic.
void repair_to_budget(Allocation& x, double budget, std::span<const double> bounds);

struct HarmonyRow {
  Allocation x;
  CandidateEval eval;
};

struct HarmonyMemory {
  std::vector<HarmonyRow> rows;
  std::size_t worst_index = 0;

  void refresh_worst();
};

/// Draws 2*hms random repaired allocations and keeps the best hms.
HarmonyMemory initialize_memory(const ReducedLP& lp, const HSParams& params, Rng& rng);

/// One improvisation: per coordinate, copy from a random memory row with
/// probability hmcr (then pitch-adjust by U(-1,1)*fw with probability par),
/// otherwise draw uniformly from [0, bound]; the vector is budget-repaired
/// before it is returned.
Allocation improvise(const HarmonyMemory& memory, const ReducedLP& lp, const HSParams& params,
                     Rng& rng, int iteration = 0);

struct TracePoint {
  int iteration = 0;
  double objective = 0.0;
  double violation = 0.0;
};

struct HSResult {
  Solution solution;
  std::vector<TracePoint> trace;  // best-ever snapshot every 100 iterations
};

HSResult solve_hs(const ReducedLP& lp, const HSParams& params);

}  // namespace possifolio
