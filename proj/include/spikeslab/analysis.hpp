#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spikeslab/gibbs.hpp"
#include "spikeslab/model.hpp"

namespace spikeslab {

// One entry of the ranked model list: an inclusion vector, its visit
// frequency among retained draws, and the retained-draw index of its first
// visit (the ranking tie-breaker).
struct TopModel {
  std::vector<std::uint8_t> z;
  double frequency = 0.0;
  std::size_t first_draw = 0;
};

// One grid entry of the threshold-selection study.
struct DeltaRecord {
  double delta = 0.0;
  std::vector<std::uint8_t> z_star;  // most frequent model at this delta
  double mse_delta = 0.0;            // conditional residual-variance mean
  double expected_increase = 0.0;    // mse_delta / mse_bma - 1
};

struct DeltaSelection {
  double mse_bma = 0.0;
  double threshold = 0.0;
  std::vector<DeltaRecord> records;  // one per grid value, input order
  std::size_t selected_index = 0;
  // False when no record met the threshold and the minimal-increase
  // fallback was used instead.
  bool threshold_met = false;
};

// Aggregate of the analyses a single fit reports.
struct PosteriorReport {
  std::vector<double> inclusion_probabilities;
  std::vector<TopModel> top_models;
  std::optional<double> mse_bma;
  std::optional<DeltaSelection> delta_selection;
  // Log Bayes factor of the most visited model against the runner-up;
  // +inf when the runner-up was never visited.
  std::optional<double> log_bf_top_vs_runner_up;
};

// Coordinate-wise mean of the retained inclusion draws.
std::vector<double> inclusion_probabilities(const SampleStore& store);

// The k most visited models, frequency-descending, ties broken by first
// visit.  Returns fewer entries when fewer distinct models were visited.
std::vector<TopModel> top_models(const SampleStore& store, std::size_t k);

// Model-averaged residual-variance estimate: the mean retained sigma_r^2
// draw of an unrestricted delta = 0 chain.
double estimate_mse_bma(const SampleStore& store);

struct ConditionalMse {
  std::vector<std::uint8_t> z_star;  // in the full coordinate system
  double mse_delta = 0.0;
};

// Runs a chain at delta_star to find its most visited model z*, then a
// conditional chain on the design restricted to z* (inclusion fixed, every
// kept coefficient slab-constrained) and returns the mean sigma_r^2 draw.
// An empty z* degenerates to the null model with all coefficients at zero.
ConditionalMse estimate_mse_for_delta(const RegressionData& data,
                                      double delta_star,
                                      const PriorConfig& cfg_template,
                                      const SamplerSettings& settings);

// The selection rule alone: index of the sparsest record with
// expected_increase below the threshold, ties broken by larger delta.
// Returns {index, false} for the minimal-increase record when none passes.
std::pair<std::size_t, bool> select_index(
    const std::vector<DeltaRecord>& records, double threshold);

// Threshold-selection sweep: the baseline is a delta = 0 model-averaged
// run, each grid entry contributes (z*, mse_delta, expected_increase), and
// the winner is chosen by select_index.  Grid entries run on up to
// `workers` threads with per-entry derived seeds, so the result does not
// depend on scheduling.
DeltaSelection select_delta(const RegressionData& data,
                            const std::vector<double>& delta_grid,
                            const PriorConfig& cfg_template,
                            const SamplerSettings& settings,
                            double threshold = 0.05,
                            std::size_t workers = 1);

// Log posterior-odds Bayes factor of model s_model against s_prime from the
// visit frequencies of one chain, divided by the prior odds (the correction
// can be disabled).  Unvisited s_prime yields +inf, unvisited s_model
// -inf.  Requires s_model != s_prime.
double estimate_log_bf(const SampleStore& store,
                       const std::vector<std::uint8_t>& s_model,
                       const std::vector<std::uint8_t>& s_prime,
                       bool prior_odds_correction = true);

// Same estimate from a bare visit-count map (keys packed as in
// pack_model_key), for callers that only retain the counts of a chain.
double estimate_log_bf(const std::map<std::string, ModelCount>& model_counts,
                       std::size_t dim,
                       const std::vector<std::uint8_t>& s_model,
                       const std::vector<std::uint8_t>& s_prime,
                       bool prior_odds_correction = true);

}  // namespace spikeslab
