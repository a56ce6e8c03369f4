#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spikeslab/gibbs.hpp"
#include "spikeslab/model.hpp"

namespace spikeslab {

// LowDim: d = 8, beta = (3, 1.5, 0, 0, 2, 0, 0, 0), residual sd 3,
// covariate correlation 0.5^|i-j|.
// HighDim: d = 1000, beta = (3, 2, 1, 0, ...), residual sd sqrt(3),
// correlation 0.6^|i-j|.
enum class Regime { LowDim, HighDim };

struct SyntheticSpec {
  Regime regime = Regime::LowDim;
  std::size_t n = 100;
  // Zero coefficients are replaced by draws from U[-half_width, half_width]:
  // every zero in the low-dimensional regime, the ten coordinates directly
  // after the signal block in the high-dimensional one.
  double noise_half_width = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
  std::size_t dim() const;
};

struct SyntheticInstance {
  RegressionData data;
  Eigen::VectorXd true_beta;  // after noise injection
};

// Draws covariate rows from the AR(1) Gaussian via its sequential
// conditional form and the response from the linear model.
SyntheticInstance generate(const SyntheticSpec& spec);

// {j : |beta_j| > delta}, the scoring-time ground truth.
std::vector<std::size_t> relevant_set(const Eigen::VectorXd& beta,
                                      double delta);

// Harmonic mean of precision and recall; empty selection scores 0 against a
// non-empty truth, and two empty sets agree perfectly.
double f1_score(const std::vector<std::size_t>& selected,
                const std::vector<std::size_t>& truth);

// The comparison model for a Bayes factor against `s_model`: the most
// visited model when it differs, otherwise the runner-up; absent when the
// chain never left s_model.
std::optional<std::vector<std::uint8_t>> choose_alternative(
    const SampleStore& store, const std::vector<std::uint8_t>& s_model);

struct BfExperimentConfig {
  Regime regime = Regime::LowDim;
  std::vector<std::size_t> n_grid;
  double noise_half_width = 0.0;
  std::size_t repetitions = 10;
  std::vector<PriorMode> modes = {PriorMode::Disjunct, PriorMode::FullSupport};
  double delta = 0.5;
  bool prior_odds_correction = true;
  SamplerSettings settings;  // seed acts as the experiment master seed
  std::size_t workers = 1;
};

// Per-(mode, n) Bayes-factor aggregates over the repetitions.
struct BfCell {
  PriorMode mode = PriorMode::Disjunct;
  std::size_t n = 0;
  std::vector<double> log_bf;  // one entry per repetition; +/-inf sentinels
  std::size_t pos_inf = 0;     // chain never left the reference model
  std::size_t neg_inf = 0;     // reference model never visited
  // Lower median over all entries; sentinels sort as usual.
  double median_log_bf = 0.0;
  // Over the finite entries only.
  std::optional<double> mean_log_bf;
  std::optional<double> sd_log_bf;
  // Ratio-scale aggregates: -inf entries contribute zero, +inf entries are
  // excluded and only show up in pos_inf.
  std::optional<double> mean_bf;
  std::optional<double> sd_bf;
};

// Repeatedly generates data and runs one chain per mode on the shared
// dataset of each repetition.  Each repetition's entry compares the
// relevant set at delta against that chain's most visited model — or its
// second most visited model when the most visited one is the relevant set
// itself.  A chain that never leaves the relevant set has no comparison
// model and yields the +inf sentinel (prior odds divided out by default).
// Job seeds derive from the master seed, so results do not depend on
// worker scheduling.
std::vector<BfCell> bf_growth_experiment(const BfExperimentConfig& cfg);

struct BenchmarkConfig {
  Regime regime = Regime::LowDim;
  std::vector<std::size_t> n_grid;
  std::vector<double> noise_grid = {0.0};  // U[-eta, eta] half-widths
  std::vector<double> delta_grid = {0.5};
  std::size_t repetitions = 10;
  SamplerSettings settings;  // seed acts as the experiment master seed
  std::size_t workers = 1;
};

// Selection quality over the repetitions of one (n, eta, delta) cell.
struct BenchmarkCell {
  std::size_t n = 0;
  double noise_half_width = 0.0;
  double delta = 0.0;
  std::vector<double> f1;               // one entry per repetition
  std::vector<std::size_t> selected;    // selected-model sizes per repetition
  double mean_f1 = 0.0;
  double mean_selected = 0.0;
  std::optional<double> sd_f1;          // sample sd; needs >= 2 repetitions
  std::optional<double> sd_selected;
};

// Selection benchmark for the disjunct-support sampler: per repetition and
// (n, eta) pair one dataset is generated and analyzed at every delta in the
// grid; the chain's most visited model is scored by F1 against the
// coefficients truly exceeding that delta.  Cells come back in (n, eta,
// delta) nested grid order.  Job seeds derive from the master seed, so
// results do not depend on worker scheduling.
std::vector<BenchmarkCell> f1_benchmark(const BenchmarkConfig& cfg);

}  // namespace spikeslab
