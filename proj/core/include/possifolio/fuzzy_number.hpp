#pragma once

#include "possifolio/reference_function.hpp"

namespace possifolio {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// LR fuzzy number with flat peak [peak_lo, peak_hi] and shoulders shaped by
/// the reference functions scaled by the spreads. A zero spread means a hard
/// cutoff at the peak (the limit of the linear case).
struct LRFuzzyNumber {
  double peak_lo = 0.0;
  double peak_hi = 0.0;
  double spread_left = 0.0;   // left spread, >= 0
  double spread_right = 0.0;  // right spread, >= 0
  ReferenceFunction left_ref{};
  ReferenceFunction right_ref{};

  double support_lo() const { return peak_lo - spread_left; }
  double support_hi() const { return peak_hi + spread_right; }
};

bool is_valid(const LRFuzzyNumber& a);

/// Membership grade of x; total function with values in [0,1].
double membership(const LRFuzzyNumber& a, double x);

/// Level set {x | membership(x) >= alpha}, alpha in (0,1].
/// Endpoints come from the reference pseudo-inverses, so the cut is exact for
/// any supplied reference pair.
Interval alpha_cut(const LRFuzzyNumber& a, double alpha);

/// Degree of possibility that a takes a value >= threshold, i.e. the supremum
/// of membership over [threshold, +inf).
double possibility_ge_crisp(const LRFuzzyNumber& a, double threshold);

/// Degree of possibility of a >= b: sup over y1 >= y2 of
/// min(membership(a, y1), membership(b, y2)). Closed form for linear
/// references; continuous custom references are resolved by bisection on the
/// shoulder crossing.
double possibility_ge_fuzzy(const LRFuzzyNumber& a, const LRFuzzyNumber& b);

}  // namespace possifolio
