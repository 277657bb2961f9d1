#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "possifolio/portfolio.hpp"

namespace possifolio {

/// The two confidence dials: a probability level (over the driving draw) and
/// a possibility level (over the fuzzy outcome). Raising either shrinks the
/// feasible region of the reduced problem.
struct ChanceLevels {
  double lambda;  // probability level, in (0,1)
  double eta;     // possibility level, in (0,1]

  ChanceLevels(double lambda_, double eta_);
};

struct LPProvenance {
  std::string instance_id;
  double lambda = 0.0;
  double eta = 0.0;
  QuantileMode mode = QuantileMode::exact;
};

/// Deterministic linear program equivalent to the chance-constrained model:
/// maximize c.x subject to sum(x) = budget, c.x >= rhs, 0 <= x <= bounds.
struct ReducedLP {
  std::vector<double> c;
  double rhs = 0.0;
  double budget = 0.0;
  std::vector<double> bounds;
  LPProvenance provenance;

  std::size_t size() const { return c.size(); }

  /// Copy with the return constraint dropped (rhs = -inf); used to reproduce
  /// reference cells whose return constraint is unsatisfiable.
  ReducedLP without_return_constraint() const;
};

/// Chance-constraint reduction. Per asset,
///   c_j = R1_j + T*(1 - lambda) * R2_j + R*(eta) * gamma_j,
/// and the return-constraint right side is
///   rhs = R0_0 + T*(1 - lambda) * R2_0 - beta_0 * L*(eta),
/// where T* is the driving distribution's quantile (in the requested mode)
/// and L*, R* are the reference pseudo-inverses of the corresponding shoulder.
ReducedLP reduce(const PortfolioInstance& inst, const ChanceLevels& levels, QuantileMode mode,
                 std::string instance_id = {});

std::string quantile_mode_name(QuantileMode mode);

std::string serialize_lp(const ReducedLP& lp);
ReducedLP parse_lp(const std::string& text, const std::string& origin = "<string>");
ReducedLP load_lp(const std::filesystem::path& path);
void save_lp(const ReducedLP& lp, const std::filesystem::path& path);

}  // namespace possifolio
