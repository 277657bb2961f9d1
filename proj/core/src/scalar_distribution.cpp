#include "possifolio/scalar_distribution.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace possifolio {

namespace {

// Wichura's AS 241 (PPND16) rational approximations; full double precision on
// its own, refined further below so the pseudo-inverse contract holds in
// floating point.
double ppnd16(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -v : v;
}

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

}  // namespace

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("normal_quantile: p must lie in (0,1)");
  double x = ppnd16(p);
  // Two Halley steps against the erfc-based CDF pin the result to the last ulp.
  for (int i = 0; i < 2; ++i) {
    const double pdf = std::exp(-0.5 * x * x) * kInvSqrt2Pi;
    if (pdf < 1e-300) break;
    const double u = (normal_cdf(x) - p) / pdf;
    x -= u / (1.0 + 0.5 * u * x);
  }
  // Enforce the inf-form contract: smallest double t with cdf(t) >= p.
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 64 && normal_cdf(x) < p; ++i) x = std::nextafter(x, inf);
  for (int i = 0; i < 64; ++i) {
    const double down = std::nextafter(x, -inf);
    if (normal_cdf(down) >= p)
      x = down;
    else
      break;
  }
  return x;
}

ScalarDistribution ScalarDistribution::custom(std::function<double(double)> cdf,
                                              std::function<double(double)> quantile) {
  if (!cdf || !quantile)
    throw std::invalid_argument("ScalarDistribution::custom: both maps required");
  ScalarDistribution d;
  d.kind_ = Kind::custom;
  d.cdf_ = std::move(cdf);
  d.quantile_ = std::move(quantile);
  return d;
}

double ScalarDistribution::cdf(double x) const {
  return kind_ == Kind::standard_normal ? normal_cdf(x) : cdf_(x);
}

double ScalarDistribution::quantile(double p, QuantileMode mode) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("ScalarDistribution::quantile: p must lie in (0,1)");
  const double q = kind_ == Kind::standard_normal ? normal_quantile(p) : quantile_(p);
  if (mode == QuantileMode::exact) return q;
  const double rounded = std::round(q * 100.0) / 100.0;
  return rounded == 0.0 ? 0.0 : rounded;  // normalize -0
}

double ScalarDistribution::sample(Rng& rng) const {
  return quantile(uniform_open01(rng), QuantileMode::exact);
}

}  // namespace possifolio
