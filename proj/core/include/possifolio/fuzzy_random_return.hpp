#pragma once

#include "possifolio/fuzzy_number.hpp"

namespace possifolio {

/// Fuzzy random return: an LR fuzzy number whose peak interval is shifted by
/// t * peak_shift, with t drawn from the instance's driving distribution.
/// Spreads and reference functions do not depend on t.
struct FuzzyRandomReturn {
  double peak_lo_base = 0.0;
  double peak_hi_base = 0.0;
  double peak_shift = 0.0;
  double spread_left = 0.0;
  double spread_right = 0.0;
  ReferenceFunction left_ref{};
  ReferenceFunction right_ref{};
};

/// Observed fuzzy number for a given draw t.
inline LRFuzzyNumber realize(const FuzzyRandomReturn& r, double t) {
  return {r.peak_lo_base + t * r.peak_shift, r.peak_hi_base + t * r.peak_shift,
          r.spread_left, r.spread_right, r.left_ref, r.right_ref};
}

}  // namespace possifolio
