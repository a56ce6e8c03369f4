#include "spikeslab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spikeslab/errors.hpp"
#include "spikeslab/mathutil.hpp"
#include "spikeslab/parallel.hpp"
#include "spikeslab/rng.hpp"

namespace spikeslab {

namespace {

std::size_t active_count(const std::vector<std::uint8_t>& z) {
  std::size_t s = 0;
  for (const auto b : z) s += b != 0;
  return s;
}

}  // namespace

std::vector<double> inclusion_probabilities(const SampleStore& store) {
  if (store.retained() == 0) {
    throw std::invalid_argument("inclusion_probabilities: empty store");
  }
  std::vector<double> prob(store.dim, 0.0);
  for (const auto& z : store.z_draws) {
    for (std::size_t j = 0; j < store.dim; ++j) prob[j] += z[j] != 0;
  }
  const double denom = static_cast<double>(store.retained());
  for (auto& p : prob) p /= denom;
  return prob;
}

std::vector<TopModel> top_models(const SampleStore& store, std::size_t k) {
  struct Entry {
    const std::string* key;
    ModelCount count;
  };
  std::vector<Entry> entries;
  entries.reserve(store.model_counts.size());
  for (const auto& [key, count] : store.model_counts) {
    entries.push_back({&key, count});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.count.count != b.count.count) return a.count.count > b.count.count;
    return a.count.first_draw < b.count.first_draw;
  });
  if (entries.size() > k) entries.resize(k);
  std::vector<TopModel> out;
  out.reserve(entries.size());
  const double denom = static_cast<double>(store.retained());
  for (const auto& entry : entries) {
    out.push_back({unpack_model_key(*entry.key, store.dim),
                   static_cast<double>(entry.count.count) / denom,
                   entry.count.first_draw});
  }
  return out;
}

double estimate_mse_bma(const SampleStore& store) {
  if (store.retained() == 0) {
    throw std::invalid_argument("estimate_mse_bma: empty store");
  }
  if (store.delta != 0.0 || store.conditional) {
    throw std::invalid_argument(
        "estimate_mse_bma: store must come from an unrestricted chain at "
        "delta = 0");
  }
  double sum = 0.0;
  for (const double v : store.sigma_r_sq_draws) sum += v;
  return sum / static_cast<double>(store.sigma_r_sq_draws.size());
}

ConditionalMse estimate_mse_for_delta(const RegressionData& data,
                                      double delta_star,
                                      const PriorConfig& cfg_template,
                                      const SamplerSettings& settings) {
  const PriorConfig cfg =
      PriorConfig::calibrated(delta_star, cfg_template.mode, cfg_template.nu_r,
                              cfg_template.eta_r_sq, cfg_template.nu1,
                              cfg_template.eta1_sq);
  SamplerSettings unconditional = settings;
  unconditional.fixed_z.reset();
  unconditional.store_beta = false;
  const SampleStore store = run_chain(data, cfg, unconditional);

  const std::vector<TopModel> top = top_models(store, 1);
  ConditionalMse out;
  out.z_star = top.empty() ? std::vector<std::uint8_t>(store.dim, 0) : top[0].z;

  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < data.dim(); ++j) {
    if (out.z_star[static_cast<std::size_t>(j)]) kept.push_back(j);
  }
  Eigen::MatrixXd restricted(data.n(), static_cast<Eigen::Index>(kept.size()));
  for (Eigen::Index c = 0; c < restricted.cols(); ++c) {
    restricted.col(c) = data.x.col(kept[static_cast<std::size_t>(c)]);
  }
  const RegressionData restricted_data(std::move(restricted), data.y);

  SamplerSettings conditional = settings;
  conditional.seed = Rng::derive_seed(settings.seed, 1);
  conditional.fixed_z = std::vector<std::uint8_t>(kept.size(), 1);
  conditional.store_beta = false;
  const SampleStore fixed = run_chain(restricted_data, cfg, conditional);

  double sum = 0.0;
  for (const double v : fixed.sigma_r_sq_draws) sum += v;
  out.mse_delta = sum / static_cast<double>(fixed.sigma_r_sq_draws.size());
  return out;
}

std::pair<std::size_t, bool> select_index(
    const std::vector<DeltaRecord>& records, double threshold) {
  if (records.empty()) {
    throw std::invalid_argument("select_index: no records");
  }
  std::size_t best = records.size();
  std::size_t best_size = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!(records[i].expected_increase < threshold)) continue;
    const std::size_t size = active_count(records[i].z_star);
    if (best == records.size() || size < best_size ||
        (size == best_size && records[i].delta > records[best].delta)) {
      best = i;
      best_size = size;
    }
  }
  if (best != records.size()) return {best, true};
  // Fallback: smallest increase; equal increases prefer the sparser model,
  // then the larger delta, keeping the result deterministic.
  best = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double inc = records[i].expected_increase;
    const double best_inc = records[best].expected_increase;
    if (inc < best_inc) {
      best = i;
    } else if (inc == best_inc) {
      const std::size_t size = active_count(records[i].z_star);
      const std::size_t bsize = active_count(records[best].z_star);
      if (size < bsize ||
          (size == bsize && records[i].delta > records[best].delta)) {
        best = i;
      }
    }
  }
  return {best, false};
}

DeltaSelection select_delta(const RegressionData& data,
                            const std::vector<double>& delta_grid,
                            const PriorConfig& cfg_template,
                            const SamplerSettings& settings,
                            double threshold, std::size_t workers) {
  if (delta_grid.empty()) {
    throw std::invalid_argument("select_delta: empty delta grid");
  }
  if (!std::isfinite(threshold)) {
    throw std::invalid_argument("select_delta: non-finite threshold");
  }
  DeltaSelection out;
  out.threshold = threshold;
  out.records.resize(delta_grid.size());
  // Job 0 is the delta = 0 baseline; job g >= 1 handles grid entry g - 1.
  parallel_for_index(delta_grid.size() + 1, workers, [&](std::size_t job) {
    if (job == 0) {
      const PriorConfig cfg0 = PriorConfig::calibrated(
          0.0, PriorMode::Disjunct, cfg_template.nu_r, cfg_template.eta_r_sq,
          cfg_template.nu1, cfg_template.eta1_sq);
      SamplerSettings bma = settings;
      bma.seed = Rng::derive_seed(settings.seed, 0);
      bma.fixed_z.reset();
      bma.store_beta = false;
      out.mse_bma = estimate_mse_bma(run_chain(data, cfg0, bma));
      return;
    }
    const std::size_t g = job - 1;
    SamplerSettings per = settings;
    per.seed = Rng::derive_seed(settings.seed, job);
    const ConditionalMse mse =
        estimate_mse_for_delta(data, delta_grid[g], cfg_template, per);
    out.records[g].delta = delta_grid[g];
    out.records[g].z_star = mse.z_star;
    out.records[g].mse_delta = mse.mse_delta;
  });
  for (auto& record : out.records) {
    record.expected_increase = record.mse_delta / out.mse_bma - 1.0;
  }
  const auto [index, met] = select_index(out.records, threshold);
  out.selected_index = index;
  out.threshold_met = met;
  return out;
}

double estimate_log_bf(const SampleStore& store,
                       const std::vector<std::uint8_t>& s_model,
                       const std::vector<std::uint8_t>& s_prime,
                       bool prior_odds_correction) {
  if (store.retained() == 0) {
    throw std::invalid_argument("estimate_log_bf: empty store");
  }
  return estimate_log_bf(store.model_counts, store.dim, s_model, s_prime,
                         prior_odds_correction);
}

double estimate_log_bf(const std::map<std::string, ModelCount>& model_counts,
                       std::size_t dim,
                       const std::vector<std::uint8_t>& s_model,
                       const std::vector<std::uint8_t>& s_prime,
                       bool prior_odds_correction) {
  if (s_model.size() != dim || s_prime.size() != dim) {
    throw std::invalid_argument("estimate_log_bf: model size mismatch");
  }
  if (s_model == s_prime) {
    throw std::invalid_argument(
        "estimate_log_bf: models must differ");
  }
  if (model_counts.empty()) {
    throw std::invalid_argument("estimate_log_bf: empty store");
  }
  const auto count_of = [&](const std::vector<std::uint8_t>& z) {
    const auto it = model_counts.find(pack_model_key(z));
    return it == model_counts.end() ? std::size_t{0} : it->second.count;
  };
  const std::size_t count_model = count_of(s_model);
  const std::size_t count_prime = count_of(s_prime);
  if (count_prime == 0) return kInf;
  if (count_model == 0) return kNegInf;
  double log_bf = std::log(static_cast<double>(count_model)) -
                  std::log(static_cast<double>(count_prime));
  if (prior_odds_correction) {
    log_bf -= log_indicator_prior(active_count(s_model), dim) -
              log_indicator_prior(active_count(s_prime), dim);
  }
  return log_bf;
}

}  // namespace spikeslab
