#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace spikeslab {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2*pi))
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double sqr(double x) { return x * x; }

// log(Phi(x)), accurate for all x.  For x <= -10 the direct erfc path loses
// relative accuracy, so the Mills-ratio asymptotic series is used instead;
// it converges to ~1e-17 relative there.
inline double log_norm_cdf(double x) {
  if (x > 8.0) {
    // Phi(x) ~ 1; log1p keeps the tiny tail contribution.
    return std::log1p(-0.5 * std::erfc(x * M_SQRT1_2));
  }
  if (x >= -10.0) {
    return std::log(0.5 * std::erfc(-x * M_SQRT1_2));
  }
  const double t = -x;
  const double t2 = t * t;
  double term = 1.0, sum = 1.0, prev = kInf;
  for (int k = 1; k < 40; ++k) {
    term *= -(2.0 * k - 1.0) / t2;
    if (std::abs(term) >= prev) break;  // asymptotic series started diverging
    sum += term;
    prev = std::abs(term);
    if (prev < 1e-17 * sum) break;
  }
  return -0.5 * t2 - std::log(t) - kLogSqrt2Pi + std::log(sum);
}

// log(1 - Phi(x)) = log(Phi(-x)).
inline double log_norm_sf(double x) { return log_norm_cdf(-x); }

// log(1 - e^x) for x < 0, stable near both ends.
inline double log1mexp(double x) {
  if (x >= 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (x > -M_LN2) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

// log(e^a + e^b).
inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log(e^a - e^b), requires a > b.
inline double log_diff_exp(double a, double b) {
  if (b == kNegInf) return a;
  return a + log1mexp(b - a);
}

// log(Phi(hi) - Phi(lo)) for lo < hi, stable in both tails.
inline double log_norm_cdf_interval(double lo, double hi) {
  if (lo >= 0.0) {
    // Both in the upper tail: Phi(hi) - Phi(lo) = SF(lo) - SF(hi).
    return log_diff_exp(log_norm_sf(lo), log_norm_sf(hi));
  }
  if (hi <= 0.0) {
    return log_diff_exp(log_norm_cdf(hi), log_norm_cdf(lo));
  }
  // Interval straddles zero: the two erf magnitudes add, no cancellation.
  const double p = 0.5 * (std::erf(hi * M_SQRT1_2) - std::erf(lo * M_SQRT1_2));
  return std::log(p);
}

}  // namespace spikeslab
