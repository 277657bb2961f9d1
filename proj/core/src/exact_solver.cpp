#include "possifolio/exact_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace possifolio {

namespace {

double dot_in_index_order(const std::vector<double>& c, const Allocation& x) {
  double v = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) v += c[j] * x[j];
  return v;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible: return "feasible";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

Solution solve_exact(const ReducedLP& lp) {
  const std::size_t n = lp.c.size();
  if (lp.bounds.size() != n)
    throw std::invalid_argument("solve_exact: bounds/coefficients length mismatch");

  Solution s;
  s.solver = "exact-greedy";
  s.x.assign(n, 0.0);

  const double total_bound = std::accumulate(lp.bounds.begin(), lp.bounds.end(), 0.0);
  if (total_bound < lp.budget) {
    s.status = SolveStatus::infeasible;
    s.violation = std::numeric_limits<double>::infinity();
    return s;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lp.c[a] > lp.c[b]; });

  double remaining = lp.budget;
  for (std::size_t j : order) {
    const double take = std::min(lp.bounds[j], remaining);
    s.x[j] = take;
    remaining -= take;
    if (remaining <= 0.0) break;
  }

  s.objective = dot_in_index_order(lp.c, s.x);
  if (s.objective >= lp.rhs) {
    s.status = SolveStatus::optimal;
  } else {
    s.status = SolveStatus::infeasible;
    s.violation = lp.rhs - s.objective;
  }
  return s;
}

Solution brute_force_grid(const ReducedLP& lp, double step) {
  const std::size_t n = lp.c.size();
  if (lp.bounds.size() != n)
    throw std::invalid_argument("brute_force_grid: bounds/coefficients length mismatch");
  if (!(step > 0.0)) throw std::invalid_argument("brute_force_grid: step must be positive");
  if (n > 4) throw std::invalid_argument("brute_force_grid: limited to n <= 4");
  if (lp.budget / step > 100.0 + 1e-9)
    throw std::invalid_argument("brute_force_grid: limited to budget/step <= 100");

  Solution best;
  best.solver = "grid";
  best.x.assign(n, 0.0);
  best.violation = std::numeric_limits<double>::infinity();

  const std::int64_t total_steps = std::llround(lp.budget / step);
  if (std::abs(total_steps * step - lp.budget) > 1e-9 * std::max(1.0, std::abs(lp.budget)))
    return best;  // budget off-lattice: no candidate exists

  std::vector<std::int64_t> max_steps(n);
  for (std::size_t j = 0; j < n; ++j)
    max_steps[j] = static_cast<std::int64_t>(std::floor(lp.bounds[j] / step + 1e-9));

  Allocation x(n, 0.0);
  bool found_any = false;

  auto lex_greater = [](const Allocation& a, const Allocation& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  };

  auto consider = [&](const Allocation& cand) {
    const double obj = dot_in_index_order(lp.c, cand);
    const double violation = std::max(0.0, lp.rhs - obj);
    const bool feasible = violation == 0.0;
    const bool best_feasible = found_any && best.violation == 0.0;
    bool better = false;
    if (!found_any) {
      better = true;
    } else if (feasible != best_feasible) {
      better = feasible;
    } else if (feasible) {
      better = obj > best.objective || (obj == best.objective && lex_greater(cand, best.x));
    } else {
      better = violation < best.violation ||
               (violation == best.violation && lex_greater(cand, best.x));
    }
    if (better) {
      best.x = cand;
      best.objective = obj;
      best.violation = violation;
      found_any = true;
    }
  };

  // Depth-first over step counts; the last coordinate absorbs the remainder.
  auto enumerate = [&](auto&& self, std::size_t j, std::int64_t left) -> void {
    if (j + 1 == n) {
      if (left <= max_steps[j]) {
        x[j] = static_cast<double>(left) * step;
        consider(x);
      }
      return;
    }
    const std::int64_t cap = std::min(max_steps[j], left);
    for (std::int64_t k = 0; k <= cap; ++k) {
      x[j] = static_cast<double>(k) * step;
      self(self, j + 1, left - k);
    }
  };
  enumerate(enumerate, 0, total_steps);

  if (!found_any) {
    best.status = SolveStatus::infeasible;
    return best;
  }
  best.status = best.violation == 0.0 ? SolveStatus::optimal : SolveStatus::infeasible;
  return best;
}

}  // namespace possifolio
