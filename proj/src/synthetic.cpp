#include "spikeslab/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spikeslab/analysis.hpp"
#include "spikeslab/errors.hpp"
#include "spikeslab/mathutil.hpp"
#include "spikeslab/parallel.hpp"
#include "spikeslab/rng.hpp"

namespace spikeslab {

namespace {

struct RegimeParams {
  Eigen::VectorXd beta;
  double rho;
  double sigma_r;
  std::vector<Eigen::Index> noise_indices;
};

RegimeParams regime_params(Regime regime) {
  RegimeParams params;
  if (regime == Regime::LowDim) {
    params.beta = Eigen::VectorXd::Zero(8);
    params.beta << 3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0;
    params.rho = 0.5;
    params.sigma_r = 3.0;
    for (Eigen::Index j = 0; j < 8; ++j) {
      if (params.beta[j] == 0.0) params.noise_indices.push_back(j);
    }
  } else {
    params.beta = Eigen::VectorXd::Zero(1000);
    params.beta[0] = 3.0;
    params.beta[1] = 2.0;
    params.beta[2] = 1.0;
    params.rho = 0.6;
    params.sigma_r = std::sqrt(3.0);
    // One percent of the zero block, the coordinates directly after the
    // signal.
    for (Eigen::Index j = 3; j < 13; ++j) params.noise_indices.push_back(j);
  }
  return params;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (n == 0) throw validation_error("SyntheticSpec: n must be >= 1");
  if (!std::isfinite(noise_half_width) || noise_half_width < 0.0) {
    throw validation_error("SyntheticSpec: noise half-width must be >= 0");
  }
}

std::size_t SyntheticSpec::dim() const {
  return regime == Regime::LowDim ? 8 : 1000;
}

SyntheticInstance generate(const SyntheticSpec& spec) {
  spec.validate();
  RegimeParams params = regime_params(spec.regime);
  Rng rng(spec.seed);

  if (spec.noise_half_width > 0.0) {
    for (const Eigen::Index j : params.noise_indices) {
      params.beta[j] = spec.noise_half_width * (2.0 * rng.uniform() - 1.0);
    }
  }

  const Eigen::Index n = static_cast<Eigen::Index>(spec.n);
  const Eigen::Index d = params.beta.size();
  const double cond_sd = std::sqrt(1.0 - params.rho * params.rho);
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = rng.normal();
    for (Eigen::Index j = 1; j < d; ++j) {
      x(i, j) = params.rho * x(i, j - 1) + cond_sd * rng.normal();
    }
  }
  Eigen::VectorXd y = x * params.beta;
  for (Eigen::Index i = 0; i < n; ++i) y[i] += params.sigma_r * rng.normal();

  SyntheticInstance out;
  out.data = RegressionData(std::move(x), std::move(y));
  out.true_beta = std::move(params.beta);
  return out;
}

std::vector<std::size_t> relevant_set(const Eigen::VectorXd& beta,
                                      double delta) {
  std::vector<std::size_t> out;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (std::abs(beta[j]) > delta) out.push_back(static_cast<std::size_t>(j));
  }
  return out;
}

double f1_score(const std::vector<std::size_t>& selected,
                const std::vector<std::size_t>& truth) {
  if (selected.empty() && truth.empty()) return 1.0;
  if (selected.empty() || truth.empty()) return 0.0;
  std::vector<std::size_t> a = selected, b = truth;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::size_t> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  if (common.empty()) return 0.0;
  const double precision =
      static_cast<double>(common.size()) / static_cast<double>(a.size());
  const double recall =
      static_cast<double>(common.size()) / static_cast<double>(b.size());
  return 2.0 * precision * recall / (precision + recall);
}

std::optional<std::vector<std::uint8_t>> choose_alternative(
    const SampleStore& store, const std::vector<std::uint8_t>& s_model) {
  for (const TopModel& model : top_models(store, 2)) {
    if (model.z != s_model) return model.z;
  }
  return std::nullopt;
}

std::vector<BfCell> bf_growth_experiment(const BfExperimentConfig& cfg) {
  if (cfg.n_grid.empty()) {
    throw validation_error("bf_growth_experiment: empty n grid");
  }
  if (cfg.repetitions == 0) {
    throw validation_error("bf_growth_experiment: repetitions must be >= 1");
  }
  if (cfg.modes.empty()) {
    throw validation_error("bf_growth_experiment: no prior modes");
  }
  // Calibration is deterministic; do it once per mode up front.
  std::vector<PriorConfig> prior_per_mode;
  prior_per_mode.reserve(cfg.modes.size());
  for (const PriorMode mode : cfg.modes) {
    prior_per_mode.push_back(PriorConfig::calibrated(cfg.delta, mode));
  }

  const std::size_t n_cells = cfg.modes.size() * cfg.n_grid.size();
  std::vector<BfCell> cells(n_cells);
  for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
    for (std::size_t k = 0; k < cfg.n_grid.size(); ++k) {
      BfCell& cell = cells[m * cfg.n_grid.size() + k];
      cell.mode = cfg.modes[m];
      cell.n = cfg.n_grid[k];
      cell.log_bf.assign(cfg.repetitions, 0.0);
    }
  }

  // One job per (repetition, n): the dataset is generated once and shared by
  // every mode, exactly as when comparing priors on common data.
  const std::size_t jobs = cfg.repetitions * cfg.n_grid.size();
  const std::uint64_t master = cfg.settings.seed;
  parallel_for_index(jobs, cfg.workers, [&](std::size_t job) {
    const std::size_t rep = job / cfg.n_grid.size();
    const std::size_t k = job % cfg.n_grid.size();
    const std::uint64_t base_id = static_cast<std::uint64_t>(job) * 4;

    SyntheticSpec spec;
    spec.regime = cfg.regime;
    spec.n = cfg.n_grid[k];
    spec.noise_half_width = cfg.noise_half_width;
    spec.seed = Rng::derive_seed(master, base_id);
    const SyntheticInstance instance = generate(spec);

    const std::vector<std::size_t> truth =
        relevant_set(instance.true_beta, cfg.delta);
    std::vector<std::uint8_t> truth_z(
        static_cast<std::size_t>(instance.true_beta.size()), 0);
    for (const std::size_t j : truth) truth_z[j] = 1;

    for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
      SamplerSettings settings = cfg.settings;
      settings.seed = Rng::derive_seed(master, base_id + 1 + m);
      settings.fixed_z.reset();
      settings.store_beta = false;
      const SampleStore store =
          run_chain(instance.data, prior_per_mode[m], settings);
      const std::optional<std::vector<std::uint8_t>> alternative =
          choose_alternative(store, truth_z);
      const double log_bf =
          alternative ? estimate_log_bf(store, truth_z, *alternative,
                                        cfg.prior_odds_correction)
                      : kInf;
      cells[m * cfg.n_grid.size() + k].log_bf[rep] = log_bf;
    }
  });

  for (BfCell& cell : cells) {
    std::vector<double> finite;
    std::vector<double> ratio;  // BF scale, +inf excluded
    for (const double lb : cell.log_bf) {
      if (lb == kInf) {
        ++cell.pos_inf;
        continue;
      }
      if (lb == kNegInf) {
        ++cell.neg_inf;
        ratio.push_back(0.0);
        continue;
      }
      finite.push_back(lb);
      ratio.push_back(std::exp(lb));
    }
    std::vector<double> sorted = cell.log_bf;
    std::sort(sorted.begin(), sorted.end());
    cell.median_log_bf = sorted[(sorted.size() - 1) / 2];

    const auto aggregate = [](const std::vector<double>& values,
                              std::optional<double>& mean,
                              std::optional<double>& sd) {
      if (values.empty()) return;
      double sum = 0.0;
      for (const double v : values) sum += v;
      const double m = sum / static_cast<double>(values.size());
      mean = m;
      if (values.size() >= 2) {
        double ss = 0.0;
        for (const double v : values) ss += (v - m) * (v - m);
        sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
      }
    };
    aggregate(finite, cell.mean_log_bf, cell.sd_log_bf);
    aggregate(ratio, cell.mean_bf, cell.sd_bf);
  }
  return cells;
}

std::vector<BenchmarkCell> f1_benchmark(const BenchmarkConfig& cfg) {
  if (cfg.n_grid.empty()) throw validation_error("f1_benchmark: empty n grid");
  if (cfg.noise_grid.empty()) {
    throw validation_error("f1_benchmark: empty noise grid");
  }
  if (cfg.delta_grid.empty()) {
    throw validation_error("f1_benchmark: empty delta grid");
  }
  if (cfg.repetitions == 0) {
    throw validation_error("f1_benchmark: repetitions must be positive");
  }
  for (const double delta : cfg.delta_grid) {
    if (!(delta >= 0.0)) {
      throw validation_error("f1_benchmark: delta must be non-negative");
    }
  }

  // Calibrate each grid delta once; every job reuses the result.
  std::vector<PriorConfig> prior_per_delta;
  prior_per_delta.reserve(cfg.delta_grid.size());
  for (const double delta : cfg.delta_grid) {
    prior_per_delta.push_back(PriorConfig::calibrated(delta));
  }

  const std::size_t n_count = cfg.n_grid.size();
  const std::size_t eta_count = cfg.noise_grid.size();
  const std::size_t delta_count = cfg.delta_grid.size();
  std::vector<BenchmarkCell> cells(n_count * eta_count * delta_count);
  for (std::size_t a = 0; a < n_count; ++a) {
    for (std::size_t b = 0; b < eta_count; ++b) {
      for (std::size_t g = 0; g < delta_count; ++g) {
        BenchmarkCell& cell = cells[(a * eta_count + b) * delta_count + g];
        cell.n = cfg.n_grid[a];
        cell.noise_half_width = cfg.noise_grid[b];
        cell.delta = cfg.delta_grid[g];
        cell.f1.assign(cfg.repetitions, 0.0);
        cell.selected.assign(cfg.repetitions, 0);
      }
    }
  }

  // One job per (repetition, n, eta): the dataset is generated once and
  // analyzed at every delta of the grid, mirroring how one would study the
  // threshold's effect on fixed data.
  const std::size_t jobs = cfg.repetitions * n_count * eta_count;
  const std::uint64_t seed_stride = static_cast<std::uint64_t>(delta_count) + 1;
  const std::uint64_t master = cfg.settings.seed;
  parallel_for_index(jobs, cfg.workers, [&](std::size_t job) {
    const std::size_t rep = job / (n_count * eta_count);
    const std::size_t a = (job / eta_count) % n_count;
    const std::size_t b = job % eta_count;
    const std::uint64_t base_id = static_cast<std::uint64_t>(job) * seed_stride;

    SyntheticSpec spec;
    spec.regime = cfg.regime;
    spec.n = cfg.n_grid[a];
    spec.noise_half_width = cfg.noise_grid[b];
    spec.seed = Rng::derive_seed(master, base_id);
    const SyntheticInstance instance = generate(spec);

    for (std::size_t g = 0; g < delta_count; ++g) {
      SamplerSettings settings = cfg.settings;
      settings.seed = Rng::derive_seed(master, base_id + 1 + g);
      settings.fixed_z.reset();
      settings.store_beta = false;
      const SampleStore store =
          run_chain(instance.data, prior_per_delta[g], settings);
      const std::vector<std::uint8_t> z_star = top_models(store, 1).front().z;
      std::vector<std::size_t> selected;
      for (std::size_t j = 0; j < z_star.size(); ++j) {
        if (z_star[j]) selected.push_back(j);
      }
      const std::vector<std::size_t> truth =
          relevant_set(instance.true_beta, cfg.delta_grid[g]);
      BenchmarkCell& cell = cells[(a * eta_count + b) * delta_count + g];
      cell.f1[rep] = f1_score(selected, truth);
      cell.selected[rep] = selected.size();
    }
  });

  for (BenchmarkCell& cell : cells) {
    const double reps = static_cast<double>(cfg.repetitions);
    double f1_sum = 0.0;
    double count_sum = 0.0;
    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
      f1_sum += cell.f1[rep];
      count_sum += static_cast<double>(cell.selected[rep]);
    }
    cell.mean_f1 = f1_sum / reps;
    cell.mean_selected = count_sum / reps;
    if (cfg.repetitions >= 2) {
      double f1_ss = 0.0;
      double count_ss = 0.0;
      for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
        f1_ss += sqr(cell.f1[rep] - cell.mean_f1);
        count_ss += sqr(static_cast<double>(cell.selected[rep]) - cell.mean_selected);
      }
      cell.sd_f1 = std::sqrt(f1_ss / (reps - 1.0));
      cell.sd_selected = std::sqrt(count_ss / (reps - 1.0));
    }
  }
  return cells;
}

}  // namespace spikeslab
