#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oracles.hpp"
#include "possifolio/harmony_search.hpp"

using namespace possifolio;

namespace {

constexpr double kNoRhs = -std::numeric_limits<double>::infinity();

ReducedLP example_lp(double level, bool enforce = true) {
  const ReducedLP lp = reduce(oracles::example_instance(), ChanceLevels(level, level),
                              QuantileMode::rounded_2dp);
  return enforce ? lp : lp.without_return_constraint();
}

ReducedLP random_lp(Rng& rng) {
  const std::size_t n = 1 + rng() % 6;
  ReducedLP lp;
  lp.rhs = kNoRhs;
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    lp.c.push_back(uniform_range(rng, -2.0, 5.0));
    lp.bounds.push_back(uniform_range(rng, 5.0, 100.0));
    total += lp.bounds.back();
  }
  lp.budget = uniform_range(rng, 0.2, 0.95) * total;
  return lp;
}

double sum_of(const Allocation& x) { return std::accumulate(x.begin(), x.end(), 0.0); }

}  // namespace

TEST_CASE("repair_to_budget: bounds hold and the budget is met tightly") {
  Rng rng(3);
  for (int i = 0; i < 400; ++i) {
    const ReducedLP lp = random_lp(rng);
    Allocation x(lp.size());
    for (std::size_t j = 0; j < x.size(); ++j)
      x[j] = uniform_range(rng, -0.2 * lp.bounds[j], 1.4 * lp.bounds[j]);
    repair_to_budget(x, lp.budget, lp.bounds);
    for (std::size_t j = 0; j < x.size(); ++j) {
      CHECK(x[j] >= 0.0);
      CHECK(x[j] <= lp.bounds[j]);
    }
    CHECK(std::abs(sum_of(x) - lp.budget) <= 1e-9 * lp.budget);
  }
}

TEST_CASE("repair_to_budget: all-zero input gets the proportional seed") {
  Allocation x{0.0, 0.0, 0.0};
  const std::vector<double> bounds{10.0, 30.0, 60.0};
  repair_to_budget(x, 50.0, bounds);
  CHECK(x[0] == doctest::Approx(5.0));
  CHECK(x[1] == doctest::Approx(15.0));
  CHECK(x[2] == doctest::Approx(30.0));
}

TEST_CASE("repair_to_budget: scale-down path stays within bounds") {
  Allocation x{60.0, 60.0, 60.0};
  const std::vector<double> bounds{60.0, 60.0, 60.0};
  repair_to_budget(x, 90.0, bounds);
  CHECK(sum_of(x) == doctest::Approx(90.0));
  for (double v : x) CHECK(v == doctest::Approx(30.0));
}

TEST_CASE("compare: feasibility first, then violation, then objective") {
  const CandidateEval feasible_hi{100.0, 0.0};
  const CandidateEval feasible_lo{90.0, 0.0};
  const CandidateEval bad{200.0, 1.0};
  const CandidateEval worse{10.0, 5.0};
  CHECK(is_better(feasible_lo, bad));
  CHECK(is_better(bad, worse));
  CHECK(is_better(feasible_hi, feasible_lo));
  CHECK(compare(feasible_hi, feasible_hi) == std::strong_ordering::equal);
}

TEST_CASE("initialize_memory: size, repair contract, determinism, forced point") {
  const ReducedLP lp = example_lp(0.1);
  HSParams p;
  Rng rng(55);
  const HarmonyMemory hm = initialize_memory(lp, p, rng);
  REQUIRE(hm.rows.size() == 6);
  for (const HarmonyRow& row : hm.rows)
    CHECK(std::abs(sum_of(row.x) - lp.budget) <= 1e-9 * lp.budget);
  // no row compares strictly worse than the tracked worst row
  for (const HarmonyRow& row : hm.rows)
    CHECK(!is_better(hm.rows[hm.worst_index].eval, row.eval));

  Rng r1(99), r2(99);
  const HarmonyMemory a = initialize_memory(lp, p, r1);
  const HarmonyMemory b = initialize_memory(lp, p, r2);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].x == b.rows[i].x);

  ReducedLP forced;
  forced.c = {1.0};
  forced.bounds = {200.0};
  forced.budget = 200.0;
  forced.rhs = kNoRhs;
  Rng r3(1);
  for (const HarmonyRow& row : initialize_memory(forced, p, r3).rows)
    CHECK(row.x == Allocation{200.0});
}

TEST_CASE("improvise: pure memory copy returns the shared row") {
  const ReducedLP lp = example_lp(0.1);
  HSParams p;
  p.hmcr = 1.0;
  p.par = 0.0;
  Rng rng(12);
  HarmonyMemory hm = initialize_memory(lp, p, rng);
  const Allocation shared = hm.rows.front().x;
  for (HarmonyRow& row : hm.rows) row.x = shared;
  for (int i = 0; i < 20; ++i) CHECK(improvise(hm, lp, p, rng) == shared);
}

TEST_CASE("improvise: hmcr = 0 candidates are bitwise independent of memory") {
  const ReducedLP lp = example_lp(0.1);
  HSParams p;
  p.hmcr = 0.0;
  Rng seed_rng(9);
  HarmonyMemory hm = initialize_memory(lp, p, seed_rng);
  HarmonyMemory permuted = hm;
  std::rotate(permuted.rows.begin(), permuted.rows.begin() + 2, permuted.rows.end());
  permuted.refresh_worst();

  Rng a(777), b(777);
  for (int i = 0; i < 50; ++i) CHECK(improvise(hm, lp, p, a) == improvise(permuted, lp, p, b));
}

TEST_CASE("improvise: zero fret width with par = 1 picks memory values verbatim") {
  ReducedLP lp;  // single variable: any memory pick must equal some row
  lp.c = {1.0};
  lp.bounds = {100.0};
  lp.budget = 60.0;
  lp.rhs = kNoRhs;
  HSParams p;
  p.hmcr = 1.0;
  p.par = 1.0;
  p.fret_widths = {0.0};
  Rng rng(21);
  const HarmonyMemory hm = initialize_memory(lp, p, rng);
  for (int i = 0; i < 20; ++i) {
    const Allocation cand = improvise(hm, lp, p, rng);
    bool matches_row = false;
    for (const HarmonyRow& row : hm.rows) matches_row |= cand == row.x;
    CHECK(matches_row);
  }
}

TEST_CASE("solve_hs: single-variable instance is solved at iteration zero") {
  ReducedLP lp;
  lp.c = {2.0};
  lp.bounds = {75.0};
  lp.budget = 75.0;
  lp.rhs = kNoRhs;
  HSParams p;
  p.max_improvisations = 1;
  const HSResult r = solve_hs(lp, p);
  CHECK(r.solution.status == SolveStatus::feasible);
  CHECK(r.solution.x == Allocation{75.0});
  CHECK(r.trace.front().iteration == 0);
  CHECK(r.trace.front().objective == 150.0);
}

TEST_CASE("solve_hs: deterministic run, trace monotone, budget respected") {
  const ReducedLP lp = example_lp(0.1);
  HSParams p;
  p.seed = 31337;
  const HSResult a = solve_hs(lp, p);
  const HSResult b = solve_hs(lp, p);
  CHECK(a.solution.x == b.solution.x);
  CHECK(a.solution.objective == b.solution.objective);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].iteration == b.trace[i].iteration);
    CHECK(a.trace[i].objective == b.trace[i].objective);
  }
  CHECK(a.trace.size() == 101);  // init + every 100 of 10000
  for (std::size_t i = 1; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].violation <= a.trace[i - 1].violation);
    if (a.trace[i].violation == 0.0 && a.trace[i - 1].violation == 0.0)
      CHECK(a.trace[i].objective >= a.trace[i - 1].objective);
  }
  CHECK(std::abs(sum_of(a.solution.x) - lp.budget) <= 1e-9 * lp.budget);
}

TEST_CASE("solve_hs: never beats the exact optimum, any seed") {
  Rng rng(61);
  for (int i = 0; i < 15; ++i) {
    const ReducedLP lp = random_lp(rng);
    const double exact = solve_exact(lp).objective;
    HSParams p;
    p.max_improvisations = 2000;
    p.seed = rng();
    const HSResult r = solve_hs(lp, p);
    CHECK(r.solution.objective <= exact + 1e-9);
    for (std::size_t j = 0; j < r.solution.x.size(); ++j) {
      CHECK(r.solution.x[j] >= 0.0);
      CHECK(r.solution.x[j] <= lp.bounds[j]);
    }
  }
}

TEST_CASE("solve_hs: reference cell quality at defaults") {
  const ReducedLP lp = example_lp(0.1);
  HSParams p;
  p.seed = 5;
  const HSResult r = solve_hs(lp, p);
  CHECK(r.solution.status == SolveStatus::feasible);
  CHECK(r.solution.objective >= 0.995 * 451.22);
}

TEST_CASE("solve_hs: infeasible cell reports best-violation information") {
  const ReducedLP lp = example_lp(0.9);  // rhs 182 > attainable 164.44
  HSParams p;
  p.seed = 2;
  p.max_improvisations = 3000;
  const HSResult r = solve_hs(lp, p);
  CHECK(r.solution.status == SolveStatus::infeasible);
  CHECK(r.solution.violation > 0.0);
  CHECK(r.solution.violation == doctest::Approx(182.0 - r.solution.objective));
}

TEST_CASE("solve_hs: linear schedules run and stay sound") {
  const ReducedLP lp = example_lp(0.4);
  HSParams p;
  p.seed = 8;
  p.max_improvisations = 3000;
  p.hmcr_final = 0.99;
  p.par_final = 0.1;
  p.fw_scale_final = 0.2;
  const HSResult a = solve_hs(lp, p);
  const HSResult b = solve_hs(lp, p);
  CHECK(a.solution.x == b.solution.x);
  CHECK(a.solution.objective <= solve_exact(lp).objective + 1e-9);
}

TEST_CASE("parameter validation") {
  const ReducedLP lp = example_lp(0.1);
  HSParams p;
  p.hms = 0;
  CHECK_THROWS_AS(solve_hs(lp, p), std::invalid_argument);
  p = {};
  p.hmcr = 1.5;
  CHECK_THROWS_AS(solve_hs(lp, p), std::invalid_argument);
  p = {};
  p.fret_widths = {1.0};  // wrong length
  CHECK_THROWS_AS(solve_hs(lp, p), std::invalid_argument);
  p = {};
  p.max_improvisations = 0;
  CHECK_THROWS_AS(solve_hs(lp, p), std::invalid_argument);
}
