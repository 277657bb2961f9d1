#include "possifolio/harmony_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace possifolio {

namespace {

void check_params(const ReducedLP& lp, const HSParams& p) {
  if (lp.bounds.size() != lp.c.size())
    throw std::invalid_argument("harmony search: bounds/coefficients length mismatch");
  double total = 0.0;
  for (double b : lp.bounds) total += b;
  if (total < lp.budget)
    throw std::invalid_argument("harmony search: upper bounds cannot reach the budget");
  if (p.hms < 1) throw std::invalid_argument("harmony search: hms must be >= 1");
  if (p.hmcr < 0.0 || p.hmcr > 1.0)
    throw std::invalid_argument("harmony search: hmcr must lie in [0,1]");
  if (p.par < 0.0 || p.par > 1.0)
    throw std::invalid_argument("harmony search: par must lie in [0,1]");
  if (p.max_improvisations < 1)
    throw std::invalid_argument("harmony search: max_improvisations must be >= 1");
  if (!p.fret_widths.empty() && p.fret_widths.size() != lp.size())
    throw std::invalid_argument("harmony search: fret_widths length mismatch");
  for (double w : p.fret_widths)
    if (w < 0.0) throw std::invalid_argument("harmony search: negative fret width");
}

std::vector<double> base_fret_widths(const ReducedLP& lp, const HSParams& p) {
  if (!p.fret_widths.empty()) return p.fret_widths;
  std::vector<double> fw(lp.size());
  for (std::size_t j = 0; j < lp.size(); ++j) fw[j] = p.fw_frac * lp.bounds[j];
  return fw;
}

// Linear schedule position for 0-based iteration i of a run of length mi.
double schedule(double start, std::optional<double> final, int i, int mi) {
  if (!final || mi <= 1) return start;
  const double frac = static_cast<double>(i) / static_cast<double>(mi - 1);
  return start + (*final - start) * frac;
}

}  // namespace

CandidateEval evaluate(const ReducedLP& lp, const Allocation& x) {
  double obj = 0.0;
  for (std::size_t j = 0; j < lp.size(); ++j) obj += lp.c[j] * x[j];
  return {obj, std::max(0.0, lp.rhs - obj)};
}

std::strong_ordering compare(const CandidateEval& a, const CandidateEval& b) {
  if (a.violation != b.violation)
    return a.violation < b.violation ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a.objective != b.objective)
    return a.objective > b.objective ? std::strong_ordering::greater : std::strong_ordering::less;
  return std::strong_ordering::equal;
}

void repair_to_budget(Allocation& x, double budget, std::span<const double> bounds) {
  const std::size_t n = x.size();
  if (bounds.size() != n) throw std::invalid_argument("repair_to_budget: length mismatch");
  if (!(budget > 0.0)) throw std::invalid_argument("repair_to_budget: budget must be positive");

  for (std::size_t j = 0; j < n; ++j) x[j] = std::clamp(x[j], 0.0, bounds[j]);

  double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (sum <= 0.0) {
    const double total = std::accumulate(bounds.begin(), bounds.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) x[j] = std::min(bounds[j], budget * bounds[j] / total);
    sum = std::accumulate(x.begin(), x.end(), 0.0);
  }

  const double tol = 1e-9 * budget;
  for (int pass = 0; pass < 64; ++pass) {
    sum = std::accumulate(x.begin(), x.end(), 0.0);
    if (std::abs(sum - budget) <= tol) break;
    const double scale = budget / sum;
    if (sum > budget) {
      for (double& v : x) v *= scale;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) x[j] = std::min(bounds[j], x[j] * scale);
    sum = std::accumulate(x.begin(), x.end(), 0.0);
    const double deficit = budget - sum;
    if (deficit <= 0.0) continue;
    double headroom = 0.0;
    for (std::size_t j = 0; j < n; ++j) headroom += bounds[j] - x[j];
    if (headroom <= 0.0) break;
    for (std::size_t j = 0; j < n; ++j)
      x[j] = std::min(bounds[j], x[j] + deficit * (bounds[j] - x[j]) / headroom);
  }

  // Absorb the remaining float residual into a single coordinate.
  sum = std::accumulate(x.begin(), x.end(), 0.0);
  double residual = budget - sum;
  if (residual != 0.0) {
    std::size_t pick = 0;
    double score = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double room = residual > 0.0 ? bounds[j] - x[j] : x[j];
      if (room > score) {
        score = room;
        pick = j;
      }
    }
    x[pick] = std::clamp(x[pick] + residual, 0.0, bounds[pick]);
  }
}

void HarmonyMemory::refresh_worst() {
  worst_index = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (is_better(rows[worst_index].eval, rows[i].eval)) worst_index = i;
}

HarmonyMemory initialize_memory(const ReducedLP& lp, const HSParams& params, Rng& rng) {
  check_params(lp, params);
  const std::size_t n = lp.size();
  std::vector<HarmonyRow> pool;
  pool.reserve(2 * static_cast<std::size_t>(params.hms));
  for (int k = 0; k < 2 * params.hms; ++k) {
    Allocation x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = uniform_range(rng, 0.0, lp.bounds[j]);
    repair_to_budget(x, lp.budget, lp.bounds);
    CandidateEval eval = evaluate(lp, x);
    pool.push_back({std::move(x), eval});
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const HarmonyRow& a, const HarmonyRow& b) { return is_better(a.eval, b.eval); });
  pool.resize(static_cast<std::size_t>(params.hms));
  HarmonyMemory memory{std::move(pool), 0};
  memory.refresh_worst();
  return memory;
}

Allocation improvise(const HarmonyMemory& memory, const ReducedLP& lp, const HSParams& params,
                     Rng& rng, int iteration) {
  const std::size_t n = lp.size();
  const int mi = params.max_improvisations;
  const double hmcr = schedule(params.hmcr, params.hmcr_final, iteration, mi);
  const double par = schedule(params.par, params.par_final, iteration, mi);
  const double fw_scale = schedule(1.0, params.fw_scale_final, iteration, mi);
  const std::vector<double> fw = base_fret_widths(lp, params);

  Allocation x(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (uniform01(rng) < hmcr) {
      const std::size_t row = static_cast<std::size_t>(rng() % memory.rows.size());
      double v = memory.rows[row].x[j];
      if (uniform01(rng) < par) v += (2.0 * uniform01(rng) - 1.0) * fw[j] * fw_scale;
      x[j] = std::clamp(v, 0.0, lp.bounds[j]);
    } else {
      x[j] = uniform_range(rng, 0.0, lp.bounds[j]);
    }
  }
  repair_to_budget(x, lp.budget, lp.bounds);
  return x;
}

HSResult solve_hs(const ReducedLP& lp, const HSParams& params) {
  check_params(lp, params);
  Rng rng(params.seed);
  HarmonyMemory memory = initialize_memory(lp, params, rng);

  HarmonyRow best = memory.rows.front();
  for (const HarmonyRow& row : memory.rows)
    if (is_better(row.eval, best.eval)) best = row;

  HSResult result;
  result.trace.push_back({0, best.eval.objective, best.eval.violation});

  for (int iter = 1; iter <= params.max_improvisations; ++iter) {
    Allocation x = improvise(memory, lp, params, rng, iter - 1);
    const CandidateEval eval = evaluate(lp, x);
    if (is_better(eval, memory.rows[memory.worst_index].eval)) {
      memory.rows[memory.worst_index] = {x, eval};
      memory.refresh_worst();
    }
    if (is_better(eval, best.eval)) best = {std::move(x), eval};
    if (iter % 100 == 0 || iter == params.max_improvisations)
      if (result.trace.back().iteration != iter)
        result.trace.push_back({iter, best.eval.objective, best.eval.violation});
  }

  Solution s;
  s.x = std::move(best.x);
  s.objective = best.eval.objective;
  s.violation = best.eval.violation;
  s.status = best.eval.feasible() ? SolveStatus::feasible : SolveStatus::infeasible;
  s.solver = "harmony-search";
  result.solution = std::move(s);
  return result;
}

}  // namespace possifolio
