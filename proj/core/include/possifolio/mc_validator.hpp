#pragma once

#include <cstdint>

#include "possifolio/portfolio.hpp"

namespace possifolio {

struct ChanceEstimate {
  double p_hat = 0.0;
  double half_width = 0.0;  // 3-sigma binomial half-width
  std::int64_t successes = 0;
  std::int64_t samples = 0;
};

/// Monte Carlo estimate of Pr{ possibility(portfolio return >= threshold) >= eta }
/// under the instance's driving distribution. Samples are drawn in fixed-size
/// chunks with per-chunk streams derived from (seed, chunk), so the estimate
/// is seed-stable regardless of how chunks are scheduled.
ChanceEstimate estimate_objective_chance(const PortfolioInstance& inst, const Allocation& x,
                                         double threshold, double eta, std::int64_t n_samples,
                                         std::uint64_t seed);

/// Monte Carlo estimate of Pr{ possibility(portfolio return >= target) >= eta }
/// with portfolio and target driven by the same draw (comonotone sampling).
ChanceEstimate estimate_constraint_chance(const PortfolioInstance& inst, const Allocation& x,
                                          double eta, std::int64_t n_samples, std::uint64_t seed);

/// Exact probabilities of the same events, computed from the pseudo-inverse
/// form of the per-draw possibility test. These are the analytic predictions
/// the Monte Carlo estimates are validated against.
double analytic_objective_chance(const PortfolioInstance& inst, const Allocation& x,
                                 double threshold, double eta);
double analytic_constraint_chance(const PortfolioInstance& inst, const Allocation& x, double eta);

}  // namespace possifolio
