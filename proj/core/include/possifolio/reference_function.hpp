#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace possifolio {

/// Shoulder shape of an LR fuzzy number: a strictly decreasing continuous map
/// s : [0,1] -> [0,1] with s(0) = 1 and s(1) = 0.
///
/// Custom shapes must be supplied together with their pseudo-inverse
/// sup{t | s(t) >= level}; they are never inverted numerically, which keeps
/// every closed-form computation built on them exact.
class ReferenceFunction {
 public:
  enum class Kind { linear, custom };

  ReferenceFunction() = default;  // linear: s(t) = 1 - t

  static ReferenceFunction linear() { return {}; }

  static ReferenceFunction custom(std::function<double(double)> shape,
                                  std::function<double(double)> pseudo_inverse) {
    if (!shape || !pseudo_inverse)
      throw std::invalid_argument("ReferenceFunction::custom: both maps required");
    if (std::abs(shape(0.0) - 1.0) > 1e-9 || std::abs(shape(1.0)) > 1e-9)
      throw std::invalid_argument("ReferenceFunction::custom: shape must satisfy s(0)=1, s(1)=0");
    ReferenceFunction r;
    r.kind_ = Kind::custom;
    r.shape_ = std::move(shape);
    r.inverse_ = std::move(pseudo_inverse);
    return r;
  }

  Kind kind() const { return kind_; }

  /// s(t); the argument is clamped to [0,1].
  double value(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    return kind_ == Kind::linear ? 1.0 - t : shape_(t);
  }

  /// sup{t in [0,1] | s(t) >= level}; 1 - level for the linear kind.
  double pseudo_inverse(double level) const {
    if (kind_ == Kind::linear) return 1.0 - std::clamp(level, 0.0, 1.0);
    return inverse_(level);
  }

 private:
  Kind kind_ = Kind::linear;
  std::function<double(double)> shape_;
  std::function<double(double)> inverse_;
};

}  // namespace possifolio
