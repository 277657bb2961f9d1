#include "possifolio/mc_validator.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

#include "possifolio/fuzzy_number.hpp"
#include "possifolio/rng.hpp"

namespace possifolio {

namespace {

constexpr std::int64_t kChunk = 1 << 16;

template <typename PerSample>
ChanceEstimate run_chunks(const PortfolioInstance& inst, std::int64_t n_samples,
                          std::uint64_t seed, PerSample&& success) {
  if (n_samples < 1)
    throw std::invalid_argument("monte carlo estimate: n_samples must be >= 1");
  const std::int64_t chunks = (n_samples + kChunk - 1) / kChunk;

  auto run_chunk = [&](std::int64_t chunk) -> std::int64_t {
    Rng rng(derive_stream(seed, static_cast<std::uint64_t>(chunk)));
    const std::int64_t begin = chunk * kChunk;
    const std::int64_t count = std::min(kChunk, n_samples - begin);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < count; ++i) {
      const double t = inst.distribution.sample(rng);
      if (success(t)) ++hits;
    }
    return hits;
  };

  std::int64_t hits = 0;
  if (chunks == 1) {
    hits = run_chunk(0);
  } else {
    // Bounded pool pulling chunk indices; per-chunk streams make the integer
    // totals independent of which worker ran which chunk.
    const unsigned workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()), static_cast<unsigned>(chunks));
    std::atomic<std::int64_t> next{0};
    auto drain = [&]() -> std::int64_t {
      std::int64_t local = 0;
      for (std::int64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
        local += run_chunk(c);
      return local;
    };
    std::vector<std::future<std::int64_t>> futures;
    futures.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      futures.push_back(std::async(std::launch::async, drain));
    for (auto& f : futures) hits += f.get();
  }

  ChanceEstimate est;
  est.successes = hits;
  est.samples = n_samples;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(n_samples);
  est.half_width = 3.0 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_samples));
  return est;
}

void check_allocation(const PortfolioInstance& inst, const Allocation& x) {
  if (x.size() != inst.assets.size())
    throw std::invalid_argument("monte carlo estimate: allocation length does not match asset count");
}

// Exact probability of {t : t * slope >= intercept} under the driving
// distribution, assuming a continuous CDF.
double threshold_probability(const ScalarDistribution& d, double slope, double intercept) {
  if (slope > 0.0) return 1.0 - d.cdf(intercept / slope);
  if (slope < 0.0) return d.cdf(intercept / slope);
  return intercept <= 0.0 ? 1.0 : 0.0;
}

}  // namespace

ChanceEstimate estimate_objective_chance(const PortfolioInstance& inst, const Allocation& x,
                                         double threshold, double eta, std::int64_t n_samples,
                                         std::uint64_t seed) {
  check_allocation(inst, x);
  return run_chunks(inst, n_samples, seed, [&](double t) {
    const LRFuzzyNumber z = aggregate_return(inst, x, t);
    return possibility_ge_crisp(z, threshold) >= eta;
  });
}

ChanceEstimate estimate_constraint_chance(const PortfolioInstance& inst, const Allocation& x,
                                          double eta, std::int64_t n_samples, std::uint64_t seed) {
  check_allocation(inst, x);
  return run_chunks(inst, n_samples, seed, [&](double t) {
    const LRFuzzyNumber z = aggregate_return(inst, x, t);
    const LRFuzzyNumber tgt = realize(inst.target, t);  // shared draw
    return possibility_ge_fuzzy(z, tgt) >= eta;
  });
}

double analytic_objective_chance(const PortfolioInstance& inst, const Allocation& x,
                                 double threshold, double eta) {
  check_allocation(inst, x);
  double slope = 0.0, peak_hi = 0.0, shoulder = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const FuzzyRandomReturn& a = inst.assets[j];
    slope += a.peak_shift * x[j];
    peak_hi += a.peak_hi_base * x[j];
    shoulder += a.right_ref.pseudo_inverse(eta) * a.spread_right * x[j];
  }
  const double intercept = threshold - peak_hi - shoulder;
  return threshold_probability(inst.distribution, slope, intercept);
}

double analytic_constraint_chance(const PortfolioInstance& inst, const Allocation& x, double eta) {
  check_allocation(inst, x);
  double slope = 0.0, peak_hi = 0.0, shoulder = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const FuzzyRandomReturn& a = inst.assets[j];
    slope += a.peak_shift * x[j];
    peak_hi += a.peak_hi_base * x[j];
    shoulder += a.right_ref.pseudo_inverse(eta) * a.spread_right * x[j];
  }
  const FuzzyRandomReturn& tgt = inst.target;
  slope -= tgt.peak_shift;
  const double intercept = tgt.peak_lo_base -
                           tgt.spread_left * tgt.left_ref.pseudo_inverse(eta) - peak_hi - shoulder;
  return threshold_probability(inst.distribution, slope, intercept);
}

}  // namespace possifolio
