#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "possifolio/exact_solver.hpp"
#include "possifolio/harmony_search.hpp"
#include "possifolio/mc_validator.hpp"
#include "possifolio/reduction.hpp"

using namespace possifolio;

namespace {

// Random instances kept inside Theorem-1 territory: strictly positive peak
// shifts and a target shift small enough that every feasible allocation keeps
// sum(R2_j x_j) - R2_0 > 0.
PortfolioInstance random_comonotone_instance(Rng& rng, std::size_t n) {
  PortfolioInstance inst;
  for (std::size_t j = 0; j < n; ++j) {
    double lo = uniform_range(rng, 0.5, 2.0), hi = uniform_range(rng, 0.5, 2.0);
    if (lo > hi) std::swap(lo, hi);
    inst.assets.push_back({lo, hi, uniform_range(rng, 0.2, 1.0), uniform_range(rng, 0.0, 0.5),
                           uniform_range(rng, 0.0, 0.5)});
    inst.upper_bounds.push_back(uniform_range(rng, 30.0, 80.0));
  }
  inst.budget = 100.0;
  inst.target = {uniform_range(rng, 80.0, 220.0), uniform_range(rng, 220.0, 230.0),
                 uniform_range(rng, 0.0, 15.0), uniform_range(rng, 5.0, 40.0),
                 uniform_range(rng, 5.0, 40.0)};
  return inst;
}

Allocation random_feasible_allocation(const PortfolioInstance& inst, Rng& rng) {
  Allocation x(inst.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = uniform_range(rng, 0.0, inst.upper_bounds[j]);
  repair_to_budget(x, inst.budget, inst.upper_bounds);
  return x;
}

}  // namespace

TEST_CASE("crisp degenerate instance gives a zero/one chance") {
  PortfolioInstance inst;
  inst.assets = {{1.0, 1.0, 0.0, 0.0, 0.0}};
  inst.upper_bounds = {100.0};
  inst.budget = 100.0;
  inst.target = {0.0, 0.0, 0.0, 0.0, 0.0};
  const Allocation x{100.0};
  CHECK(estimate_objective_chance(inst, x, 90.0, 0.5, 2000, 1).p_hat == 1.0);
  CHECK(estimate_objective_chance(inst, x, 110.0, 0.5, 2000, 1).p_hat == 0.0);
  CHECK(estimate_objective_chance(inst, x, -1e9, 0.5, 2000, 1).p_hat == 1.0);
}

TEST_CASE("estimates are per-seed deterministic and reject bad input") {
  const PortfolioInstance inst = oracles::example_instance();
  const Allocation x{20, 60, 60, 0, 60};
  const ChanceEstimate a = estimate_objective_chance(inst, x, 450.0, 0.1, 100, 99);
  const ChanceEstimate b = estimate_objective_chance(inst, x, 450.0, 0.1, 100, 99);
  CHECK(a.p_hat == b.p_hat);
  CHECK(a.successes == b.successes);
  CHECK_THROWS_AS(estimate_objective_chance(inst, Allocation{1.0}, 0.0, 0.5, 10, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_objective_chance(inst, x, 0.0, 0.5, 0, 0), std::invalid_argument);
}

TEST_CASE("objective chance at the reduction boundary equals lambda") {
  const PortfolioInstance inst = oracles::example_instance();
  const ReducedLP lp = reduce(inst, ChanceLevels(0.1, 0.1), QuantileMode::exact);
  const Solution opt = solve_exact(lp);
  REQUIRE(opt.status == SolveStatus::optimal);

  const ChanceEstimate est =
      estimate_objective_chance(inst, opt.x, opt.objective, 0.1, 100000, 271828);
  CHECK(std::abs(est.p_hat - 0.1) <= 0.005);
  CHECK(analytic_objective_chance(inst, opt.x, opt.objective, 0.1) ==
        doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("constraint chance: crisp zero target is always reachable") {
  // peak shifts zeroed so the portfolio return is nonnegative for every draw
  PortfolioInstance inst = oracles::example_instance();
  for (FuzzyRandomReturn& a : inst.assets) a.peak_shift = 0.0;
  inst.target = {0.0, 0.0, 0.0, 0.0, 0.0};
  const Allocation x{20, 60, 60, 0, 60};
  CHECK(estimate_constraint_chance(inst, x, 0.9, 2000, 3).p_hat == 1.0);
  CHECK(analytic_constraint_chance(inst, x, 0.9) == 1.0);
}

TEST_CASE("constraint chance at a tuned boundary equals lambda") {
  // Raise the target so the return constraint's rhs falls strictly between the
  // worst and best attainable objective, then interpolate to land exactly on it.
  PortfolioInstance inst = oracles::example_instance();
  inst.target.peak_lo_base = 325.0;
  inst.target.peak_hi_base = 325.0;
  const ChanceLevels levels(0.4, 0.4);
  const ReducedLP lp = reduce(inst, levels, QuantileMode::exact);

  const Solution best = solve_exact(lp.without_return_constraint());
  ReducedLP worst_lp = lp.without_return_constraint();
  for (double& c : worst_lp.c) c = -c;
  const Solution worst = solve_exact(worst_lp);
  double v_min = 0.0, v_max = best.objective;
  for (std::size_t j = 0; j < lp.c.size(); ++j) v_min += lp.c[j] * worst.x[j];
  REQUIRE(v_min < lp.rhs);
  REQUIRE(lp.rhs < v_max);

  const double s = (lp.rhs - v_min) / (v_max - v_min);
  Allocation x(lp.c.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = (1.0 - s) * worst.x[j] + s * best.x[j];

  CHECK(analytic_constraint_chance(inst, x, 0.4) == doctest::Approx(0.4).epsilon(1e-6));
  const ChanceEstimate est = estimate_constraint_chance(inst, x, 0.4, 100000, 314159);
  CHECK(std::abs(est.p_hat - 0.4) <= 0.005);
}

TEST_CASE("p_hat is monotone in the threshold and in eta on a fixed sample set") {
  const PortfolioInstance inst = oracles::example_instance();
  const Allocation x{20, 60, 60, 0, 60};
  const std::uint64_t seed = 606;
  double last = 1.0;
  for (double f : {200.0, 300.0, 400.0, 450.0, 500.0, 600.0}) {
    const double p = estimate_objective_chance(inst, x, f, 0.3, 20000, seed).p_hat;
    CHECK(p <= last);
    last = p;
  }
  last = 1.0;
  for (double eta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double p = estimate_objective_chance(inst, x, 450.0, eta, 20000, seed).p_hat;
    CHECK(p <= last);
    last = p;
  }
}

TEST_CASE("analytic feasibility verdict matches simulation on random instances") {
  Rng rng(1789);
  int evaluated = 0;
  for (int i = 0; i < 20; ++i) {
    const PortfolioInstance inst = random_comonotone_instance(rng, 2 + rng() % 3);
    const Allocation x = random_feasible_allocation(inst, rng);
    const double lambda = uniform_range(rng, 0.15, 0.85);
    const double eta = uniform_range(rng, 0.15, 0.95);

    const ReducedLP lp = reduce(inst, ChanceLevels(lambda, eta), QuantileMode::exact);
    double value = 0.0;
    for (std::size_t j = 0; j < lp.c.size(); ++j) value += lp.c[j] * x[j];
    const bool analytic_feasible = value >= lp.rhs;

    const double p_exact = analytic_constraint_chance(inst, x, eta);
    const std::int64_t n = 100000;
    if (std::abs(p_exact - lambda) <= 0.006) continue;  // boundary band: skip
    const ChanceEstimate est = estimate_constraint_chance(inst, x, eta, n, 1000 + i);
    const bool simulated_feasible = est.p_hat >= lambda;
    CHECK(simulated_feasible == analytic_feasible);
    CHECK(std::abs(est.p_hat - p_exact) <= std::max(est.half_width, 0.006));
    ++evaluated;
  }
  CHECK(evaluated >= 12);  // most draws must land away from the boundary
}
