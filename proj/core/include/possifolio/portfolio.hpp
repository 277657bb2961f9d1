#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "possifolio/fuzzy_random_return.hpp"
#include "possifolio/scalar_distribution.hpp"

namespace possifolio {

/// Dollar amounts invested per asset.
using Allocation = std::vector<double>;

/// Problem instance: n assets with fuzzy random returns, per-asset investment
/// caps, a total budget that must be allocated exactly, a fuzzy random target
/// return, and the scalar distribution driving all peak shifts.
struct PortfolioInstance {
  std::vector<FuzzyRandomReturn> assets;
  std::vector<double> upper_bounds;
  double budget = 0.0;
  FuzzyRandomReturn target;
  ScalarDistribution distribution;

  std::size_t size() const { return assets.size(); }
};

/// Checks every instance invariant and returns all violations (empty = ok).
std::vector<std::string> validate(const PortfolioInstance& inst);

/// Fuzzy portfolio return for allocation x at draw t: peaks are the weighted
/// sums of realized asset peaks, spreads the weighted sums of asset spreads.
/// Reference functions are taken from the first asset; the aggregation
/// assumes assets share them.
LRFuzzyNumber aggregate_return(const PortfolioInstance& inst, const Allocation& x, double t);

/// Raised on malformed instance/LP documents; the message carries the origin
/// (path), the offending field, and the line where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PortfolioInstance parse_instance(const std::string& text, const std::string& origin = "<string>");
std::string serialize_instance(const PortfolioInstance& inst);

PortfolioInstance load_instance(const std::filesystem::path& path);
void save_instance(const PortfolioInstance& inst, const std::filesystem::path& path);

}  // namespace possifolio
