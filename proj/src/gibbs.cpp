#include "spikeslab/gibbs.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "spikeslab/errors.hpp"
#include "spikeslab/mathutil.hpp"

namespace spikeslab {

void SamplerSettings::validate(Eigen::Index dim) const {
  if (iterations == 0) throw std::invalid_argument("SamplerSettings: iterations must be >= 1");
  if (!(burn_in_fraction >= 0.0) || !(burn_in_fraction < 1.0)) {
    throw std::invalid_argument("SamplerSettings: burn-in fraction must lie in [0, 1)");
  }
  if (thinning == 0) throw std::invalid_argument("SamplerSettings: thinning must be >= 1");
  if (slice_transitions == 0) {
    throw std::invalid_argument("SamplerSettings: slice transitions must be >= 1");
  }
  if (fixed_z && static_cast<Eigen::Index>(fixed_z->size()) != dim) {
    throw std::invalid_argument("SamplerSettings: fixed inclusion vector has wrong size");
  }
}

std::string pack_model_key(const std::vector<std::uint8_t>& z) {
  std::string key((z.size() + 7) / 8, '\0');
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j]) key[j / 8] = static_cast<char>(key[j / 8] | (1 << (j % 8)));
  }
  return key;
}

std::vector<std::uint8_t> unpack_model_key(const std::string& key,
                                           std::size_t dim) {
  if (key.size() != (dim + 7) / 8) {
    throw std::invalid_argument("unpack_model_key: key size does not match dimension");
  }
  std::vector<std::uint8_t> z(dim, 0);
  for (std::size_t j = 0; j < dim; ++j) {
    z[j] = (key[j / 8] >> (j % 8)) & 1;
  }
  return z;
}

double coordinate_projection(const ChainState& state,
                             const RegressionData& data, Eigen::Index j) {
  return data.xty[j] - data.gram.row(j).dot(state.beta) +
         data.gram(j, j) * state.beta[j];
}

namespace {

// Shared by the exposed per-coordinate functions and the sweep kernel.
// `t_j` is the coordinate projection, `s_rest` the active count excluding j.
std::array<ZCandidate, 2> candidates_from(double t_j, double norm2_j,
                                          const ChainState& state,
                                          const PriorConfig& cfg,
                                          std::size_t s_rest, std::size_t dim,
                                          Eigen::Index j) {
  std::array<ZCandidate, 2> out;
  const bool dirac = cfg.delta == 0.0 && cfg.mode == PriorMode::Disjunct;
  for (int c = 0; c < 2; ++c) {
    ZCandidate& cand = out[c];
    cand.region = c ? cfg.slab_region() : cfg.spike_region();
    cand.log_weight = log_indicator_prior(s_rest + (c ? 1 : 0), dim);
    if (c == 0 && dirac) {
      // Point-mass candidate: the integrated coefficient factor is one.
      cand.mu = 0.0;
      cand.var = 0.0;
      continue;
    }
    const double prior_var = c ? state.sigma1_sq : cfg.spike_var();
    const double precision = norm2_j / state.sigma_r_sq + 1.0 / prior_var;
    cand.var = 1.0 / precision;
    cand.mu = t_j / state.sigma_r_sq * cand.var;
    cand.log_weight += cand.mu * t_j / (2.0 * state.sigma_r_sq) +
                       log_trunc_norm_const(cand.region, cand.mu, cand.var) -
                       log_trunc_norm_const(cand.region, 0.0, prior_var);
    if (!std::isfinite(cand.log_weight)) {
      throw numerical_error("conditional_z_weights: non-finite weight at coordinate " +
                            std::to_string(j));
    }
  }
  return out;
}

std::size_t active_excluding(const ChainState& state, Eigen::Index j) {
  std::size_t s = state.active_count();
  if (state.z[j]) --s;
  return s;
}

int pick_candidate(const std::array<ZCandidate, 2>& cands, Rng& rng,
                   Eigen::Index j) {
  const double w0 = cands[0].log_weight;
  const double w1 = cands[1].log_weight;
  if (w0 == kNegInf && w1 == kNegInf) {
    throw numerical_error("sample_coordinate: both inclusion weights vanish at coordinate " +
                          std::to_string(j));
  }
  const double p1 = 1.0 / (1.0 + std::exp(w0 - w1));
  return rng.uniform() < p1 ? 1 : 0;
}

double draw_coefficient(const ZCandidate& cand, Rng& rng) {
  if (cand.region.kind == SupportRegion::Kind::PointMass) return 0.0;
  return sample_trunc_norm(cand.region, cand.mu, cand.var, rng);
}

double log_slice_factor(double sigma1_sq, double delta, double s_active) {
  // log h = s * (log sqrt(2 pi v) - log mass(Outer(delta), v)) >= 0.
  const double log_full = kLogSqrt2Pi + 0.5 * std::log(sigma1_sq);
  const double log_outer =
      log_trunc_norm_const(SupportRegion::outer(delta), 0.0, sigma1_sq);
  return s_active * (log_full - log_outer);
}

}  // namespace

std::array<ZCandidate, 2> conditional_z_weights(const ChainState& state,
                                                const RegressionData& data,
                                                const PriorConfig& cfg,
                                                Eigen::Index j) {
  if (j < 0 || j >= data.dim()) {
    throw std::invalid_argument("conditional_z_weights: coordinate out of range");
  }
  const double t_j = coordinate_projection(state, data, j);
  return candidates_from(t_j, data.gram(j, j), state, cfg,
                         active_excluding(state, j),
                         static_cast<std::size_t>(data.dim()), j);
}

void sample_coordinate(ChainState& state, const RegressionData& data,
                       const PriorConfig& cfg, Eigen::Index j, Rng& rng) {
  const auto cands = conditional_z_weights(state, data, cfg, j);
  const int c = pick_candidate(cands, rng, j);
  state.z[j] = static_cast<std::uint8_t>(c);
  state.beta[j] = draw_coefficient(cands[c], rng);
}

void sample_sigma_r(ChainState& state, const RegressionData& data,
                    const PriorConfig& cfg, Rng& rng) {
  const double rss = residual_sum_squares(state.beta, data);
  const double nu_post = cfg.nu_r + static_cast<double>(data.n());
  const double eta_post = (rss + cfg.nu_r * cfg.eta_r_sq) / nu_post;
  state.sigma_r_sq = sample_scaled_inv_chi_sq(nu_post, eta_post, rng);
}

SliceStats sample_sigma1(ChainState& state, const PriorConfig& cfg, Rng& rng,
                         std::size_t transitions, std::size_t rejection_cap) {
  double sumsq = 0.0;
  std::size_t s = 0;
  for (Eigen::Index j = 0; j < state.beta.size(); ++j) {
    if (state.z[j]) {
      ++s;
      sumsq += state.beta[j] * state.beta[j];
    }
  }
  const double nu_post = cfg.nu1 + static_cast<double>(s);
  const double eta_post = (cfg.nu1 * cfg.eta1_sq + sumsq) / nu_post;

  SliceStats stats;
  const bool unconstrained =
      s == 0 || cfg.mode == PriorMode::FullSupport || cfg.delta == 0.0;
  if (unconstrained) {
    state.sigma1_sq = sample_scaled_inv_chi_sq(nu_post, eta_post, rng);
    stats.accepted = transitions;
    stats.proposals = transitions;
    return stats;
  }

  const double s_active = static_cast<double>(s);
  double current = scaled_inv_chi_sq_mode(nu_post, eta_post);
  for (std::size_t t = 0; t < transitions; ++t) {
    const double log_level =
        log_slice_factor(current, cfg.delta, s_active) + std::log(rng.uniform_pos());
    bool moved = false;
    for (std::size_t k = 0; k < rejection_cap; ++k) {
      const double proposal = sample_scaled_inv_chi_sq(nu_post, eta_post, rng);
      ++stats.proposals;
      if (log_slice_factor(proposal, cfg.delta, s_active) > log_level) {
        current = proposal;
        ++stats.accepted;
        moved = true;
        break;
      }
    }
    if (!moved) {
      std::ostringstream msg;
      msg << "sample_sigma1: slice proposal cap exceeded (active=" << s
          << ", df=" << nu_post << ", scale=" << eta_post << ")";
      throw numerical_error(msg.str());
    }
  }
  state.sigma1_sq = current;
  return stats;
}

SampleStore run_chain(const RegressionData& data, const PriorConfig& cfg,
                      const SamplerSettings& settings) {
  cfg.validate();
  settings.validate(data.dim());
  const Eigen::Index d = data.dim();

  ChainState state;
  state.beta = Eigen::VectorXd::Zero(d);
  state.z.assign(static_cast<std::size_t>(d), 0);
  if (settings.fixed_z) state.z = *settings.fixed_z;
  const bool slab_needs_offset =
      cfg.mode == PriorMode::Disjunct && cfg.delta > 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    if (state.z[j] && slab_needs_offset) state.beta[j] = cfg.delta;
  }
  state.sigma_r_sq = cfg.eta_r_sq;
  state.sigma1_sq = cfg.eta1_sq;

  Rng rng(settings.seed);

  SampleStore store;
  store.delta = cfg.delta;
  store.mode = cfg.mode;
  store.iterations = settings.iterations;
  store.burn_in = settings.burn_in();
  store.thinning = settings.thinning;
  store.seed = settings.seed;
  store.dim = static_cast<std::size_t>(d);
  store.conditional = settings.fixed_z.has_value();
  const std::size_t retained =
      (settings.iterations - store.burn_in) / settings.thinning;
  store.z_draws.reserve(retained);
  store.sigma_r_sq_draws.reserve(retained);
  store.sigma1_sq_draws.reserve(retained);
  if (settings.store_beta) store.beta_draws.reserve(retained);

  // Running r = gram * beta lets each coordinate update cost O(d).
  Eigen::VectorXd r = data.gram * state.beta;

  for (std::size_t iter = 0; iter < settings.iterations; ++iter) {
    try {
      for (Eigen::Index j = 0; j < d; ++j) {
        const double t_j = data.xty[j] - r[j] + data.gram(j, j) * state.beta[j];
        const double old_beta = state.beta[j];
        if (settings.fixed_z) {
          const auto cands = candidates_from(
              t_j, data.gram(j, j), state, cfg, active_excluding(state, j),
              static_cast<std::size_t>(d), j);
          state.beta[j] = draw_coefficient(cands[state.z[j]], rng);
        } else {
          const auto cands = candidates_from(
              t_j, data.gram(j, j), state, cfg, active_excluding(state, j),
              static_cast<std::size_t>(d), j);
          const int c = pick_candidate(cands, rng, j);
          state.z[j] = static_cast<std::uint8_t>(c);
          state.beta[j] = draw_coefficient(cands[c], rng);
        }
        const double diff = state.beta[j] - old_beta;
        if (diff != 0.0) r.noalias() += data.gram.col(j) * diff;
      }
      sample_sigma_r(state, data, cfg, rng);
      const SliceStats slice = sample_sigma1(state, cfg, rng,
                                             settings.slice_transitions,
                                             settings.slice_rejection_cap);
      store.slice_accepted += slice.accepted;
      store.slice_proposals += slice.proposals;
    } catch (const numerical_error& e) {
      throw numerical_error("sweep " + std::to_string(iter) + ": " + e.what());
    }

    if (iter < store.burn_in) continue;
    if ((iter - store.burn_in + 1) % settings.thinning != 0) continue;

    const std::size_t draw_index = store.z_draws.size();
    store.z_draws.push_back(state.z);
    store.sigma_r_sq_draws.push_back(state.sigma_r_sq);
    store.sigma1_sq_draws.push_back(state.sigma1_sq);
    if (settings.store_beta) store.beta_draws.push_back(state.beta);
    auto [it, inserted] =
        store.model_counts.try_emplace(pack_model_key(state.z));
    if (inserted) it->second.first_draw = draw_index;
    ++it->second.count;
  }
  return store;
}

}  // namespace spikeslab
