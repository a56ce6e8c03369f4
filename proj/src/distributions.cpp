#include "spikeslab/distributions.hpp"

#include <cmath>
#include <string>

#include "spikeslab/errors.hpp"
#include "spikeslab/mathutil.hpp"
#include "spikeslab/quadrature.hpp"

namespace spikeslab {

SupportRegion SupportRegion::inner(double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("SupportRegion: delta must be >= 0");
  if (delta == 0.0) return point_mass();
  return {Kind::Inner, delta};
}

SupportRegion SupportRegion::outer(double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("SupportRegion: delta must be >= 0");
  if (delta == 0.0) return full();
  return {Kind::Outer, delta};
}

bool SupportRegion::contains(double x) const {
  switch (kind) {
    case Kind::Full: return true;
    case Kind::PointMass: return x == 0.0;
    case Kind::Inner: return std::abs(x) <= delta;
    case Kind::Outer: return std::abs(x) >= delta;
  }
  return false;
}

namespace {

void check_mean_var(double mean, double var) {
  if (!std::isfinite(mean)) throw std::invalid_argument("truncated normal: mean must be finite");
  if (!(var > 0.0) || !std::isfinite(var)) {
    throw std::invalid_argument("truncated normal: variance must be positive and finite");
  }
}

constexpr long kProposalBudget = 1000000;

void spend(long& budget) {
  if (--budget < 0) {
    throw numerical_error("sample_trunc_norm: rejection proposal budget exceeded");
  }
}

// Standard normal restricted to [a, inf[.
double sample_std_upper_tail(double a, Rng& rng, long& budget) {
  if (a <= 1.0) {
    for (;;) {
      spend(budget);
      const double x = rng.normal();
      if (x >= a) return x;
    }
  }
  const double lambda = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (;;) {
    spend(budget);
    const double z = a + rng.exponential() / lambda;
    if (std::log(rng.uniform_pos()) < -0.5 * sqr(z - lambda)) return z;
  }
}

// Standard normal restricted to [lo, hi] with lo > 0 (to the right of the
// mode).  Callers mirror the lo > 0 case onto hi < 0.
double sample_std_right_interval(double lo, double hi, Rng& rng, long& budget) {
  const double lambda = 0.5 * (lo + std::sqrt(lo * lo + 4.0));
  if ((hi - lo) * lambda >= 1.0) {
    // Wide interval: tail proposals rarely overshoot hi.
    for (;;) {
      const double z = sample_std_upper_tail(lo, rng, budget);
      if (z <= hi) return z;
    }
  }
  // Narrow interval: uniform proposal with the boundary density as bound.
  for (;;) {
    spend(budget);
    const double x = lo + (hi - lo) * rng.uniform();
    if (std::log(rng.uniform_pos()) < 0.5 * (lo * lo - x * x)) return x;
  }
}

// Standard normal restricted to [lo, hi].
double sample_std_interval(double lo, double hi, Rng& rng, long& budget) {
  if (lo > 0.0) return sample_std_right_interval(lo, hi, rng, budget);
  if (hi < 0.0) return -sample_std_right_interval(-hi, -lo, rng, budget);
  if (hi - lo >= 2.0) {
    for (;;) {
      spend(budget);
      const double x = rng.normal();
      if (x >= lo && x <= hi) return x;
    }
  }
  for (;;) {
    spend(budget);
    const double x = lo + (hi - lo) * rng.uniform();
    if (std::log(rng.uniform_pos()) < -0.5 * x * x) return x;
  }
}

}  // namespace

double log_trunc_norm_const(const SupportRegion& region, double mean,
                            double var) {
  check_mean_var(mean, var);
  const double sd = std::sqrt(var);
  switch (region.kind) {
    case SupportRegion::Kind::Full:
      return kLogSqrt2Pi + 0.5 * std::log(var);
    case SupportRegion::Kind::PointMass:
      throw std::invalid_argument(
          "log_trunc_norm_const: point-mass region has no Gaussian mass");
    case SupportRegion::Kind::Inner: {
      const double lo = (-region.delta - mean) / sd;
      const double hi = (region.delta - mean) / sd;
      return kLogSqrt2Pi + 0.5 * std::log(var) + log_norm_cdf_interval(lo, hi);
    }
    case SupportRegion::Kind::Outer: {
      const double lo = (-region.delta - mean) / sd;
      const double hi = (region.delta - mean) / sd;
      return kLogSqrt2Pi + 0.5 * std::log(var) +
             log_add_exp(log_norm_cdf(lo), log_norm_sf(hi));
    }
  }
  throw std::invalid_argument("log_trunc_norm_const: unknown region");
}

double sample_trunc_norm(const SupportRegion& region, double mean, double var,
                         Rng& rng) {
  check_mean_var(mean, var);
  const double sd = std::sqrt(var);
  long budget = kProposalBudget;
  switch (region.kind) {
    case SupportRegion::Kind::Full:
      return mean + sd * rng.normal();
    case SupportRegion::Kind::PointMass:
      return 0.0;
    case SupportRegion::Kind::Inner: {
      const double lo = (-region.delta - mean) / sd;
      const double hi = (region.delta - mean) / sd;
      return mean + sd * sample_std_interval(lo, hi, rng, budget);
    }
    case SupportRegion::Kind::Outer: {
      const double lo = (-region.delta - mean) / sd;
      const double hi = (region.delta - mean) / sd;
      const double log_w_left = log_norm_cdf(lo);
      const double log_w_right = log_norm_sf(hi);
      bool go_left;
      if (log_w_left == kNegInf && log_w_right == kNegInf) {
        throw numerical_error("sample_trunc_norm: both Outer tails have zero mass");
      } else if (log_w_left == kNegInf) {
        go_left = false;
      } else if (log_w_right == kNegInf) {
        go_left = true;
      } else {
        const double p_left = 1.0 / (1.0 + std::exp(log_w_right - log_w_left));
        go_left = rng.uniform() < p_left;
      }
      if (go_left) {
        return mean - sd * sample_std_upper_tail(-lo, rng, budget);
      }
      return mean + sd * sample_std_upper_tail(hi, rng, budget);
    }
  }
  throw std::invalid_argument("sample_trunc_norm: unknown region");
}

namespace {

void check_inv_chi_sq_params(double nu, double eta_sq) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("scaled inverse chi-square: nu must be positive");
  }
  if (!(eta_sq > 0.0) || !std::isfinite(eta_sq)) {
    throw std::invalid_argument("scaled inverse chi-square: eta_sq must be positive");
  }
}

}  // namespace

double scaled_inv_chi_sq_log_pdf(double s2, double nu, double eta_sq) {
  check_inv_chi_sq_params(nu, eta_sq);
  if (!(s2 > 0.0)) return kNegInf;
  const double h = 0.5 * nu;
  return h * std::log(eta_sq) + h * std::log(h) - std::lgamma(h) -
         (h + 1.0) * std::log(s2) - nu * eta_sq / (2.0 * s2);
}

double sample_scaled_inv_chi_sq(double nu, double eta_sq, Rng& rng) {
  check_inv_chi_sq_params(nu, eta_sq);
  return nu * eta_sq / rng.chi_square(nu);
}

double slab_marginal_log_density(double beta, double delta, double nu1,
                                 double eta1_sq) {
  check_inv_chi_sq_params(nu1, eta1_sq);
  if (!(delta >= 0.0)) throw std::invalid_argument("slab marginal: delta must be >= 0");
  if (std::abs(beta) < delta) return kNegInf;
  const SupportRegion region = SupportRegion::outer(delta);
  const double b2 = beta * beta;
  const auto integrand = [&](double u) {
    const double s2 = std::exp(u);
    if (!(s2 > 0.0) || !std::isfinite(s2)) return 0.0;
    const double log_val = -b2 / (2.0 * s2) - log_trunc_norm_const(region, 0.0, s2) +
                           scaled_inv_chi_sq_log_pdf(s2, nu1, eta1_sq) + u;
    return std::exp(log_val);
  };
  const double center = std::log(scaled_inv_chi_sq_mode(nu1, eta1_sq));
  const double value = integrate_expanding(integrand, center, 1e-10);
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw numerical_error("slab_marginal_log_density: quadrature produced no mass");
  }
  return std::log(value);
}

double slab_marginal_density(double beta, double delta, double nu1,
                             double eta1_sq) {
  return std::exp(slab_marginal_log_density(beta, delta, nu1, eta1_sq));
}

double spike_boundary_log_density(double delta, double sigma0_sq) {
  if (!(delta > 0.0)) throw std::invalid_argument("spike boundary: delta must be > 0");
  return -delta * delta / (2.0 * sigma0_sq) -
         log_trunc_norm_const(SupportRegion::inner(delta), 0.0, sigma0_sq);
}

double calibrate_spike_variance(double delta, double nu1, double eta1_sq) {
  if (!(delta > 0.0)) throw std::invalid_argument("calibrate: delta must be > 0");
  const double target = slab_marginal_log_density(delta, delta, nu1, eta1_sq);
  const double sup = -std::log(2.0 * delta);  // flat-spike limit
  if (target >= sup) {
    throw calibration_error(
        "calibrate_spike_variance: slab boundary density " +
        std::to_string(std::exp(target)) + " is not below the spike supremum " +
        std::to_string(std::exp(sup)));
  }
  double lo = std::log(1e-12 * delta * delta);
  double hi = std::log(1e12 * delta * delta);
  const auto residual = [&](double log_s2) {
    return spike_boundary_log_density(delta, std::exp(log_s2)) - target;
  };
  if (residual(hi) < 0.0) {
    throw calibration_error(
        "calibrate_spike_variance: no spike variance in bracket reaches the "
        "slab boundary density");
  }
  // The boundary density rises monotonically in sigma0_sq, so bisect.
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    if (std::abs(r) <= 1e-9) return std::exp(mid);
    (r < 0.0 ? lo : hi) = mid;
  }
  const double r = residual(mid);
  if (std::abs(r) > 1e-9) {
    throw numerical_error("calibrate_spike_variance: bisection failed to meet residual");
  }
  return std::exp(mid);
}

}  // namespace spikeslab
