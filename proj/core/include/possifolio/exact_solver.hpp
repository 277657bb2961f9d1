#pragma once

#include <string>

#include "possifolio/reduction.hpp"

namespace possifolio {

/// `optimal` is reserved for solvers that prove optimality (greedy, grid);
/// harmony search reports `feasible` for its best-found point. `infeasible`
/// solutions still carry the best allocation seen, with `violation` holding
/// the return-constraint shortfall.
enum class SolveStatus { optimal, feasible, infeasible };

std::string to_string(SolveStatus status);

struct Solution {
  Allocation x;
  double objective = 0.0;
  SolveStatus status = SolveStatus::infeasible;
  double violation = 0.0;  // max(0, rhs - objective)
  std::string solver;
};

/// Exact solver for the reduced LP's continuous-knapsack structure: fill
/// assets in descending coefficient order (ties to the lower index), splitting
/// the marginal one. The return constraint has the same orientation as the
/// objective, so the greedy optimum either satisfies it or nothing does.
Solution solve_exact(const ReducedLP& lp);

/// Testing oracle: enumerate every allocation on the step-lattice with
/// sum(x) = budget and return the best feasible one (ties resolved toward the
/// lexicographically largest allocation). Guarded to n <= 4 and
/// budget/step <= 100; throws std::invalid_argument beyond that.
Solution brute_force_grid(const ReducedLP& lp, double step);

}  // namespace possifolio
