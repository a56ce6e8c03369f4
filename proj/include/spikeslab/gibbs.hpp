#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spikeslab/model.hpp"
#include "spikeslab/rng.hpp"

namespace spikeslab {

struct SamplerSettings {
  std::size_t iterations = 10000;
  double burn_in_fraction = 0.1;
  std::size_t thinning = 1;
  std::uint64_t seed = 0;
  // Accepted (level, variance) moves per slab-variance update.
  std::size_t slice_transitions = 10;
  // Proposal budget per accepted move.
  std::size_t slice_rejection_cap = 10000;
  // When set, the inclusion vector is held at this value and only the
  // coefficients and variances are sampled (conditional chain).
  std::optional<std::vector<std::uint8_t>> fixed_z;
  // Retaining coefficient draws is optional; inclusion, model counts and
  // variance draws are always kept.
  bool store_beta = true;

  std::size_t burn_in() const {
    return static_cast<std::size_t>(static_cast<double>(iterations) * burn_in_fraction);
  }
  void validate(Eigen::Index dim) const;
};

struct ModelCount {
  std::size_t count = 0;
  std::size_t first_draw = 0;  // index of the retained draw that first hit it
};

// Post-burn-in draws of a chain plus bookkeeping used by the analyses.
struct SampleStore {
  double delta = 0.0;
  PriorMode mode = PriorMode::Disjunct;
  std::size_t iterations = 0;
  std::size_t burn_in = 0;
  std::size_t thinning = 1;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  bool conditional = false;  // produced with the inclusion vector held fixed

  std::vector<std::vector<std::uint8_t>> z_draws;
  std::vector<Eigen::VectorXd> beta_draws;
  std::vector<double> sigma_r_sq_draws;
  std::vector<double> sigma1_sq_draws;
  // Visit counts per model, keyed by the packed inclusion vector.
  std::map<std::string, ModelCount> model_counts;
  std::size_t slice_accepted = 0;
  std::size_t slice_proposals = 0;

  std::size_t retained() const { return z_draws.size(); }
  double slice_acceptance_rate() const {
    return slice_proposals == 0
               ? 1.0
               : static_cast<double>(slice_accepted) /
                     static_cast<double>(slice_proposals);
  }
};

// Inclusion vectors are keyed by their bytes packed eight per char.
std::string pack_model_key(const std::vector<std::uint8_t>& z);
std::vector<std::uint8_t> unpack_model_key(const std::string& key,
                                           std::size_t dim);

// x_j^T (y - X beta + x_j beta_j): the response projection onto column j
// with coordinate j excluded, via sufficient statistics.
double coordinate_projection(const ChainState& state,
                             const RegressionData& data, Eigen::Index j);

// Per-candidate conditional quantities for coordinate j: the posterior
// location and scale of beta_j given z_j = c, and the log weight of the
// candidate with beta_j integrated out over its support.
struct ZCandidate {
  double log_weight = 0.0;
  double mu = 0.0;
  double var = 0.0;
  SupportRegion region;
};

// Candidates for z_j = 0 and z_j = 1 given the rest of the state.
// Throws numerical_error (tagged with the coordinate) on non-finite weights.
std::array<ZCandidate, 2> conditional_z_weights(const ChainState& state,
                                                const RegressionData& data,
                                                const PriorConfig& cfg,
                                                Eigen::Index j);

// One Gibbs update of z_j (beta_j integrated out), then of beta_j from its
// truncated-normal conditional.  Updates the state in place.
void sample_coordinate(ChainState& state, const RegressionData& data,
                       const PriorConfig& cfg, Eigen::Index j, Rng& rng);

// Conditional update of the residual variance (conjugate draw).
void sample_sigma_r(ChainState& state, const RegressionData& data,
                    const PriorConfig& cfg, Rng& rng);

struct SliceStats {
  std::size_t accepted = 0;
  std::size_t proposals = 0;
};

// Conditional update of the slab variance.  With active slab coordinates in
// disjunct mode the conditional is a scaled inverse chi-square reweighted by
// h(v) = (2 pi v)^(s/2) / mass(slab, v)^s >= 1, sampled by repeated
// (level, draw) slice transitions started from the conditional mode.  With
// no active coordinates, at delta == 0, or in full-support mode, h is
// identically one and the draw is direct.
SliceStats sample_sigma1(ChainState& state, const PriorConfig& cfg, Rng& rng,
                         std::size_t transitions = 10,
                         std::size_t rejection_cap = 10000);

// Runs the full sampler: per sweep, a z/beta update for every coordinate in
// order, then the residual variance, then the slab variance.  Draws are
// recorded after burn-in at the given thinning.
SampleStore run_chain(const RegressionData& data, const PriorConfig& cfg,
                      const SamplerSettings& settings);

}  // namespace spikeslab
