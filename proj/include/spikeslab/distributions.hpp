#pragma once

#include "spikeslab/rng.hpp"

namespace spikeslab {

// Support region for one coefficient prior.
//
//   Full        : the whole real line
//   Inner(d)    : [-d, d]           (spike support), d > 0
//   Outer(d)    : ]-inf,-d] u [d,inf[ (slab support), d > 0
//   PointMass   : {0}, the d = 0 degeneration of Inner
//
// Outer(0) degenerates to Full and Inner(0) to PointMass; the factory
// functions normalize those cases so the two limits share one code path.
struct SupportRegion {
  enum class Kind { Full, Inner, Outer, PointMass };

  Kind kind = Kind::Full;
  double delta = 0.0;

  static SupportRegion full() { return {Kind::Full, 0.0}; }
  static SupportRegion point_mass() { return {Kind::PointMass, 0.0}; }
  static SupportRegion inner(double delta);
  static SupportRegion outer(double delta);

  bool contains(double x) const;
};

// log of the unnormalized Gaussian integral over a region:
//   log( integral_A exp(-(x - mean)^2 / (2 var)) dx ).
// Stable for boundaries up to tens of standard deviations from the mean.
// PointMass regions carry no Gaussian mass and are rejected.
double log_trunc_norm_const(const SupportRegion& region, double mean,
                            double var);

// Exact draw from the normal(mean, var) restricted to `region`, by
// rejection: plain normal draws near the bulk, translated-exponential
// proposals for one-sided tails beyond one standard deviation, and a
// weighted two-tail mixture for Outer regions.  PointMass returns 0.
// Throws numerical_error after 10^6 rejected proposals.
double sample_trunc_norm(const SupportRegion& region, double mean, double var,
                         Rng& rng);

// Scaled inverse chi-square with nu degrees of freedom and scale eta_sq;
// equals nu*eta_sq / chi^2(nu) in distribution.
double scaled_inv_chi_sq_log_pdf(double s2, double nu, double eta_sq);
double sample_scaled_inv_chi_sq(double nu, double eta_sq, Rng& rng);
inline double scaled_inv_chi_sq_mode(double nu, double eta_sq) {
  return nu * eta_sq / (nu + 2.0);
}

// Log marginal density of the slab prior at beta: the Outer(delta)-truncated
// normal mixed over its scaled-inverse-chi-square variance.  Computed by
// adaptive quadrature in log-variance with an expanding bracket.
// Returns -inf for |beta| < delta.
double slab_marginal_log_density(double beta, double delta, double nu1,
                                 double eta1_sq);
double slab_marginal_density(double beta, double delta, double nu1,
                             double eta1_sq);

// Log density of the Inner(delta)-truncated normal(0, sigma0_sq) at the
// boundary delta.  Strictly increasing in sigma0_sq with supremum
// 1/(2 delta).
double spike_boundary_log_density(double delta, double sigma0_sq);

// Solves for the spike variance sigma0_sq that equates the spike density at
// the boundary with the slab marginal density there, by bisection on
// log sigma0_sq over [log(1e-12 delta^2), log(1e12 delta^2)] to a relative
// residual of 1e-9.  Throws calibration_error when the slab marginal at the
// boundary meets or exceeds the spike supremum 1/(2 delta).
double calibrate_spike_variance(double delta, double nu1, double eta1_sq);

}  // namespace spikeslab
