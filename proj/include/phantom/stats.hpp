#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/distributions/binomial.hpp>

#include "phantom/errors.hpp"

namespace phantom {

struct Interval {
  double low = 0;
  double high = 1;
};

/// Wilson score interval for `wins` successes out of `trials`.
inline Interval wilson_interval(std::int64_t wins, std::int64_t trials, double z = 1.96) {
  if (trials < 1) throw DomainError("wilson_interval needs at least one trial");
  if (wins < 0 || wins > trials) throw DomainError("wilson_interval needs 0 <= wins <= trials");
  if (!(z > 0)) throw DomainError("wilson_interval needs z > 0");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(wins) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  Interval out{std::clamp(centre - half, 0.0, 1.0), std::clamp(centre + half, 0.0, 1.0)};
  if (wins == 0) out.low = 0.0;
  if (wins == trials) out.high = 1.0;
  return out;
}

/// Central binomial acceptance region for the success count of `trials`
/// Bernoulli(p) draws at the given two-sided confidence, as frequencies.
inline Interval binomial_interval(double p, std::int64_t trials, double confidence = 0.999) {
  if (trials < 1) throw DomainError("binomial_interval needs at least one trial");
  if (p < 0 || p > 1) throw DomainError("binomial_interval needs p in [0, 1]");
  if (p == 0) return {0, 0};
  if (p == 1) return {1, 1};
  const double tail = (1.0 - confidence) / 2.0;
  boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
  const double lo = std::floor(boost::math::quantile(dist, tail));
  const double hi = std::ceil(boost::math::quantile(boost::math::complement(dist, tail)));
  const double n = static_cast<double>(trials);
  return {lo / n, hi / n};
}

}  // namespace phantom
