#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "spikeslab/distributions.hpp"

namespace spikeslab {

// Disjunct: spike on [-delta, delta], slab on its complement.
// FullSupport: the same variances with untruncated normal priors.
enum class PriorMode { Disjunct, FullSupport };

struct PriorConfig {
  double delta = 0.0;
  PriorMode mode = PriorMode::Disjunct;
  double nu_r = 1.0;
  double eta_r_sq = 1.0;
  double nu1 = 1.0;
  double eta1_sq = 100.0;
  // Spike variance; present exactly when delta > 0 (at delta == 0 the spike
  // is the point mass at zero and carries no variance).
  std::optional<double> sigma0_sq;

  // Builds a config whose spike variance solves the boundary-matching
  // equation for the given delta; leaves it absent when delta == 0.
  static PriorConfig calibrated(double delta, PriorMode mode = PriorMode::Disjunct,
                                double nu_r = 1.0, double eta_r_sq = 1.0,
                                double nu1 = 1.0, double eta1_sq = 100.0);

  void validate() const;

  SupportRegion spike_region() const;
  SupportRegion slab_region() const;
  double spike_var() const;
};

// Design and response together with the sufficient statistics the sampler
// sweeps over: gram = X^T X, xty = X^T y, yty = y^T y.
struct RegressionData {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::MatrixXd gram;
  Eigen::VectorXd xty;
  double yty = 0.0;

  RegressionData() = default;
  RegressionData(Eigen::MatrixXd x_in, Eigen::VectorXd y_in);

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index dim() const { return x.cols(); }
};

struct ChainState {
  Eigen::VectorXd beta;
  std::vector<std::uint8_t> z;
  double sigma_r_sq = 1.0;
  double sigma1_sq = 1.0;

  std::size_t active_count() const;
};

// log p(z) for an inclusion vector with `active` of `dim` coordinates in the
// slab: uniform over the model size, then uniform over vectors of that size.
// Controls multiplicity; sums to one over all 2^dim vectors.
double log_indicator_prior(std::size_t active, std::size_t dim);

// ||y - X beta||^2 evaluated through the sufficient statistics.
double residual_sum_squares(const Eigen::VectorXd& beta,
                            const RegressionData& data);

// Log of the joint density of (y, beta, z, sigma_r_sq, sigma1_sq) under the
// model, including every normalizing constant.  Returns -inf when any
// coefficient violates the support its indicator prescribes.  This is the
// reference the conditional samplers are tested against.
double log_joint_density(const ChainState& state, const RegressionData& data,
                         const PriorConfig& cfg);

}  // namespace spikeslab
