#include "possifolio/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace possifolio {

bool is_valid(const LRFuzzyNumber& a) {
  return a.peak_lo <= a.peak_hi && a.spread_left >= 0.0 && a.spread_right >= 0.0 &&
         std::isfinite(a.peak_lo) && std::isfinite(a.peak_hi) &&
         std::isfinite(a.spread_left) && std::isfinite(a.spread_right);
}

double membership(const LRFuzzyNumber& a, double x) {
  if (x >= a.peak_lo && x <= a.peak_hi) return 1.0;
  if (x < a.peak_lo) {
    if (a.spread_left <= 0.0) return 0.0;
    const double t = (a.peak_lo - x) / a.spread_left;
    return t > 1.0 ? 0.0 : a.left_ref.value(t);
  }
  if (a.spread_right <= 0.0) return 0.0;
  const double t = (x - a.peak_hi) / a.spread_right;
  return t > 1.0 ? 0.0 : a.right_ref.value(t);
}

Interval alpha_cut(const LRFuzzyNumber& a, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("alpha_cut: alpha must lie in (0,1]");
  return {a.peak_lo - a.spread_left * a.left_ref.pseudo_inverse(alpha),
          a.peak_hi + a.spread_right * a.right_ref.pseudo_inverse(alpha)};
}

double possibility_ge_crisp(const LRFuzzyNumber& a, double threshold) {
  if (threshold <= a.peak_hi) return 1.0;
  if (a.spread_right <= 0.0) return 0.0;
  const double t = (threshold - a.peak_hi) / a.spread_right;
  return t > 1.0 ? 0.0 : a.right_ref.value(t);
}

double possibility_ge_fuzzy(const LRFuzzyNumber& a, const LRFuzzyNumber& b) {
  if (b.peak_lo <= a.peak_hi) return 1.0;
  const double gap = b.peak_lo - a.peak_hi;
  const double denom = b.spread_left + a.spread_right;
  if (denom <= 0.0) return 0.0;
  if (a.right_ref.kind() == ReferenceFunction::Kind::linear &&
      b.left_ref.kind() == ReferenceFunction::Kind::linear)
    return std::clamp(1.0 - gap / denom, 0.0, 1.0);
  if (gap >= denom) return 0.0;  // shoulders do not overlap
  // The sup-min sits on y1 = y2 = y in [peak_hi(a), peak_lo(b)], where the
  // decreasing right shoulder of a crosses the increasing left shoulder of b.
  double lo = std::max(a.peak_hi, b.peak_lo - b.spread_left);
  double hi = std::min(a.peak_hi + a.spread_right, b.peak_lo);
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (membership(a, mid) >= membership(b, mid))
      lo = mid;
    else
      hi = mid;
  }
  const double y = 0.5 * (lo + hi);
  return std::clamp(std::min(membership(a, y), membership(b, y)), 0.0, 1.0);
}

}  // namespace possifolio
