#include "spikeslab/model.hpp"

#include <cmath>
#include <string>

#include "spikeslab/errors.hpp"
#include "spikeslab/mathutil.hpp"

namespace spikeslab {

PriorConfig PriorConfig::calibrated(double delta, PriorMode mode, double nu_r,
                                    double eta_r_sq, double nu1,
                                    double eta1_sq) {
  PriorConfig cfg;
  cfg.delta = delta;
  cfg.mode = mode;
  cfg.nu_r = nu_r;
  cfg.eta_r_sq = eta_r_sq;
  cfg.nu1 = nu1;
  cfg.eta1_sq = eta1_sq;
  if (delta > 0.0) {
    cfg.sigma0_sq = calibrate_spike_variance(delta, nu1, eta1_sq);
  }
  cfg.validate();
  return cfg;
}

void PriorConfig::validate() const {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("PriorConfig: delta must be finite and >= 0");
  }
  for (double v : {nu_r, eta_r_sq, nu1, eta1_sq}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("PriorConfig: hyperparameters must be positive");
    }
  }
  if (delta > 0.0) {
    if (!sigma0_sq || !(*sigma0_sq > 0.0)) {
      throw std::invalid_argument(
          "PriorConfig: positive spike variance required when delta > 0");
    }
  } else {
    if (sigma0_sq) {
      throw std::invalid_argument(
          "PriorConfig: spike variance must be absent when delta == 0");
    }
    if (mode == PriorMode::FullSupport) {
      throw std::invalid_argument(
          "PriorConfig: full-support mode requires delta > 0");
    }
  }
}

SupportRegion PriorConfig::spike_region() const {
  if (mode == PriorMode::FullSupport) return SupportRegion::full();
  return SupportRegion::inner(delta);
}

SupportRegion PriorConfig::slab_region() const {
  if (mode == PriorMode::FullSupport) return SupportRegion::full();
  return SupportRegion::outer(delta);
}

double PriorConfig::spike_var() const {
  if (!sigma0_sq) {
    throw std::invalid_argument("PriorConfig: spike variance is absent at delta == 0");
  }
  return *sigma0_sq;
}

RegressionData::RegressionData(Eigen::MatrixXd x_in, Eigen::VectorXd y_in)
    : x(std::move(x_in)), y(std::move(y_in)) {
  if (x.rows() != y.size()) {
    throw validation_error("RegressionData: design has " +
                           std::to_string(x.rows()) + " rows but response has " +
                           std::to_string(y.size()));
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw validation_error("RegressionData: non-finite entries");
  }
  gram.noalias() = x.transpose() * x;
  xty.noalias() = x.transpose() * y;
  yty = y.squaredNorm();
}

std::size_t ChainState::active_count() const {
  std::size_t s = 0;
  for (auto v : z) s += (v != 0);
  return s;
}

double log_indicator_prior(std::size_t active, std::size_t dim) {
  if (active > dim) {
    throw std::invalid_argument("log_indicator_prior: active count exceeds dimension");
  }
  const double d = static_cast<double>(dim);
  const double s = static_cast<double>(active);
  const double log_binom =
      std::lgamma(d + 1.0) - std::lgamma(s + 1.0) - std::lgamma(d - s + 1.0);
  return -std::log(d + 1.0) - log_binom;
}

double residual_sum_squares(const Eigen::VectorXd& beta,
                            const RegressionData& data) {
  if (beta.size() != data.dim()) {
    throw std::invalid_argument("residual_sum_squares: dimension mismatch");
  }
  const double rss = data.yty - 2.0 * beta.dot(data.xty) +
                     beta.dot(data.gram * beta);
  return std::max(rss, 0.0);
}

double log_joint_density(const ChainState& state, const RegressionData& data,
                         const PriorConfig& cfg) {
  cfg.validate();
  const Eigen::Index d = data.dim();
  if (state.beta.size() != d || static_cast<Eigen::Index>(state.z.size()) != d) {
    throw std::invalid_argument("log_joint_density: state dimension mismatch");
  }
  if (!(state.sigma_r_sq > 0.0) || !(state.sigma1_sq > 0.0)) {
    throw std::invalid_argument("log_joint_density: variances must be positive");
  }

  const SupportRegion spike = cfg.spike_region();
  const SupportRegion slab = cfg.slab_region();
  const bool dirac_spike = (spike.kind == SupportRegion::Kind::PointMass);

  double lp = log_indicator_prior(state.active_count(), static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    const double b = state.beta[j];
    if (state.z[j]) {
      if (!slab.contains(b)) return kNegInf;
      lp += -b * b / (2.0 * state.sigma1_sq) -
            log_trunc_norm_const(slab, 0.0, state.sigma1_sq);
    } else if (dirac_spike) {
      if (b != 0.0) return kNegInf;
    } else {
      if (!spike.contains(b)) return kNegInf;
      const double s0 = cfg.spike_var();
      lp += -b * b / (2.0 * s0) - log_trunc_norm_const(spike, 0.0, s0);
    }
  }

  const double n = static_cast<double>(data.n());
  const double rss = residual_sum_squares(state.beta, data);
  const double hr = 0.5 * cfg.nu_r;
  const double h1 = 0.5 * cfg.nu1;
  // Normalizing constants of the likelihood and the two variance priors.
  lp += -0.5 * n * std::log(2.0 * M_PI);
  lp += hr * (std::log(cfg.eta_r_sq) + std::log(hr)) - std::lgamma(hr);
  lp += h1 * (std::log(cfg.eta1_sq) + std::log(h1)) - std::lgamma(h1);

  lp += -(0.5 * n + hr + 1.0) * std::log(state.sigma_r_sq) -
        (rss + cfg.nu_r * cfg.eta_r_sq) / (2.0 * state.sigma_r_sq);
  lp += -(h1 + 1.0) * std::log(state.sigma1_sq) -
        cfg.nu1 * cfg.eta1_sq / (2.0 * state.sigma1_sq);
  return lp;
}

}  // namespace spikeslab
