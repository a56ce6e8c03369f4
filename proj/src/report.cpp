#include "spikeslab/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spikeslab/errors.hpp"
#include "spikeslab/mathutil.hpp"

namespace spikeslab {

Json run_config_to_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  j["input_path"] = cfg.input_path;
  j["response"] = cfg.response;
  j["delta_grid"] = cfg.delta_grid;
  j["iterations"] = cfg.iterations;
  j["burn_in"] = cfg.burn_in;
  j["seed"] = cfg.seed;
  j["mode"] = cfg.mode;
  j["normalize"] = cfg.normalize;
  j["log_response"] = cfg.log_response;
  j["threshold"] = cfg.threshold;
  j["output_path"] = cfg.output_path;
  j["jobs"] = cfg.jobs;
  j["regime"] = cfg.regime;
  j["n_grid"] = cfg.n_grid;
  j["noise_grid"] = cfg.noise_grid;
  j["repetitions"] = cfg.repetitions;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  try {
    RunConfig cfg;
    cfg.command = j.at("command").get<std::string>();
    cfg.input_path = j.at("input_path").get<std::string>();
    cfg.response = j.at("response").get<std::string>();
    cfg.delta_grid = j.at("delta_grid").get<std::vector<double>>();
    cfg.iterations = j.at("iterations").get<std::size_t>();
    cfg.burn_in = j.at("burn_in").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.mode = j.at("mode").get<std::string>();
    cfg.normalize = j.at("normalize").get<bool>();
    cfg.log_response = j.at("log_response").get<bool>();
    cfg.threshold = j.at("threshold").get<double>();
    cfg.output_path = j.at("output_path").get<std::string>();
    cfg.jobs = j.at("jobs").get<std::size_t>();
    cfg.regime = j.at("regime").get<std::string>();
    cfg.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
    cfg.noise_grid = j.at("noise_grid").get<std::vector<double>>();
    cfg.repetitions = j.at("repetitions").get<std::size_t>();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("run_config: ") + e.what());
  }
}

PriorMode parse_prior_mode(const std::string& name) {
  if (name == "disjunct") return PriorMode::Disjunct;
  if (name == "full") return PriorMode::FullSupport;
  throw validation_error("unknown prior mode '" + name +
                         "' (expected 'disjunct' or 'full')");
}

std::string prior_mode_name(PriorMode mode) {
  return mode == PriorMode::Disjunct ? "disjunct" : "full";
}

Regime parse_regime(const std::string& name) {
  if (name == "low") return Regime::LowDim;
  if (name == "high") return Regime::HighDim;
  throw validation_error("unknown regime '" + name + "' (expected 'low' or 'high')");
}

std::string regime_name(Regime regime) {
  return regime == Regime::LowDim ? "low" : "high";
}

Json json_number(double value) {
  if (std::isfinite(value)) return Json(value);
  if (std::isnan(value)) return Json("nan");
  return Json(value > 0.0 ? "inf" : "-inf");
}

std::string number_text(double value) {
  if (!std::isfinite(value)) {
    if (std::isnan(value)) return "nan";
    return value > 0.0 ? "inf" : "-inf";
  }
  return Json(value).dump();
}

void write_json_file(const std::string& path, const Json& report) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw validation_error("cannot open output file: " + path);
  out << report.dump(2) << '\n';
  if (!out) throw validation_error("failed writing output file: " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open json file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw validation_error("cannot open output file: " + path);
  out << text;
  if (!out) throw validation_error("failed writing output file: " + path);
}

namespace {

Json data_block(const Dataset& data) {
  Json j;
  j["n"] = static_cast<std::size_t>(data.n());
  j["covariates"] = data.covariate_names;
  j["response"] = data.response_name;
  return j;
}

Json normalization_block(const NormalizationInfo& info) {
  Json j;
  j["applied"] = info.applied;
  if (info.applied) {
    j["moment_convention"] = "population";
    j["response_variance_target"] = info.response_variance_target;
    j["covariate_means"] = info.covariate_means;
    j["covariate_sds"] = info.covariate_sds;
    j["response_mean"] = info.response_mean;
    j["response_sd"] = info.response_sd;
  }
  return j;
}

Json model_block(const std::vector<std::uint8_t>& z,
                 const std::vector<std::string>& names) {
  Json j;
  std::string inclusion(z.size(), '0');
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i]) inclusion[i] = '1';
  }
  j["inclusion"] = inclusion;
  Json variables = Json::array();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i]) variables.push_back(names[i]);
  }
  j["variables"] = variables;
  return j;
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

Json fit_report(const RunConfig& run, const Dataset& data,
                const NormalizationInfo& normalization, const PriorConfig& prior,
                const SamplerSettings& settings, const SampleStore& store,
                std::size_t top_k) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["run_config"] = run_config_to_json(run);
  j["data"] = data_block(data);
  j["normalization"] = normalization_block(normalization);

  Json prior_json;
  prior_json["mode"] = prior_mode_name(prior.mode);
  prior_json["delta"] = prior.delta;
  prior_json["nu_r"] = prior.nu_r;
  prior_json["eta_r_sq"] = prior.eta_r_sq;
  prior_json["nu1"] = prior.nu1;
  prior_json["eta1_sq"] = prior.eta1_sq;
  if (prior.sigma0_sq) prior_json["sigma0_sq"] = *prior.sigma0_sq;
  j["prior"] = prior_json;

  Json sampler;
  sampler["iterations"] = settings.iterations;
  sampler["burn_in_fraction"] = settings.burn_in_fraction;
  sampler["thinning"] = settings.thinning;
  sampler["seed"] = settings.seed;
  sampler["slice_transitions"] = settings.slice_transitions;
  sampler["slice_rejection_cap"] = settings.slice_rejection_cap;
  sampler["retained_draws"] = store.retained();
  j["sampler"] = sampler;

  Json results;
  const std::vector<double> inclusion = inclusion_probabilities(store);
  Json inclusion_json = Json::array();
  for (std::size_t i = 0; i < inclusion.size(); ++i) {
    Json entry;
    entry["variable"] = data.covariate_names[i];
    entry["probability"] = inclusion[i];
    inclusion_json.push_back(entry);
  }
  results["inclusion_probabilities"] = inclusion_json;

  const std::vector<TopModel> top = top_models(store, top_k);
  Json top_json = Json::array();
  for (const TopModel& model : top) {
    Json entry = model_block(model.z, data.covariate_names);
    entry["frequency"] = model.frequency;
    top_json.push_back(entry);
  }
  results["top_models"] = top_json;

  if (top.size() >= 2) {
    results["log_bf_top_vs_runner_up"] =
        json_number(estimate_log_bf(store, top[0].z, top[1].z));
  } else {
    results["log_bf_top_vs_runner_up"] = json_number(kInf);
  }
  results["sigma_r_sq_mean"] = mean_of(store.sigma_r_sq_draws);
  results["sigma1_sq_mean"] = mean_of(store.sigma1_sq_draws);
  results["slice_acceptance_rate"] = store.slice_acceptance_rate();
  j["results"] = results;
  return j;
}

Json select_delta_report(const RunConfig& run, const Dataset& data,
                         const NormalizationInfo& normalization,
                         const DeltaSelection& selection) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["run_config"] = run_config_to_json(run);
  j["data"] = data_block(data);
  j["normalization"] = normalization_block(normalization);
  j["baseline"] = Json{{"mse_bma", selection.mse_bma}};
  j["threshold"] = selection.threshold;

  Json records = Json::array();
  for (const DeltaRecord& record : selection.records) {
    Json entry;
    entry["delta"] = record.delta;
    entry["model"] = model_block(record.z_star, data.covariate_names);
    entry["mse"] = record.mse_delta;
    entry["expected_increase"] = record.expected_increase;
    records.push_back(entry);
  }
  j["records"] = records;

  const DeltaRecord& chosen = selection.records[selection.selected_index];
  Json selected;
  selected["index"] = selection.selected_index;
  selected["delta"] = chosen.delta;
  selected["threshold_met"] = selection.threshold_met;
  selected["model"] = model_block(chosen.z_star, data.covariate_names);
  selected["expected_increase"] = chosen.expected_increase;
  j["selected"] = selected;
  return j;
}

Json benchmark_report(const RunConfig& run, const std::vector<BenchmarkCell>& cells) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["run_config"] = run_config_to_json(run);
  Json cells_json = Json::array();
  for (const BenchmarkCell& cell : cells) {
    Json entry;
    entry["n"] = cell.n;
    entry["noise_half_width"] = cell.noise_half_width;
    entry["delta"] = cell.delta;
    entry["f1"] = cell.f1;
    entry["selected_counts"] = cell.selected;
    entry["mean_f1"] = cell.mean_f1;
    entry["sd_f1"] = cell.sd_f1 ? Json(*cell.sd_f1) : Json(nullptr);
    entry["mean_selected"] = cell.mean_selected;
    entry["sd_selected"] = cell.sd_selected ? Json(*cell.sd_selected) : Json(nullptr);
    cells_json.push_back(entry);
  }
  j["cells"] = cells_json;
  return j;
}

Json bf_report(const RunConfig& run, const std::vector<BfCell>& cells) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["run_config"] = run_config_to_json(run);
  Json cells_json = Json::array();
  for (const BfCell& cell : cells) {
    Json entry;
    entry["mode"] = prior_mode_name(cell.mode);
    entry["n"] = cell.n;
    Json log_bf = Json::array();
    for (const double lb : cell.log_bf) log_bf.push_back(json_number(lb));
    entry["log_bf"] = log_bf;
    entry["pos_inf"] = cell.pos_inf;
    entry["neg_inf"] = cell.neg_inf;
    entry["median_log_bf"] = json_number(cell.median_log_bf);
    entry["mean_log_bf"] = cell.mean_log_bf ? json_number(*cell.mean_log_bf) : Json(nullptr);
    entry["sd_log_bf"] = cell.sd_log_bf ? json_number(*cell.sd_log_bf) : Json(nullptr);
    entry["mean_bf"] = cell.mean_bf ? json_number(*cell.mean_bf) : Json(nullptr);
    entry["sd_bf"] = cell.sd_bf ? json_number(*cell.sd_bf) : Json(nullptr);
    cells_json.push_back(entry);
  }
  j["cells"] = cells_json;
  return j;
}

std::string benchmark_csv(const std::string& regime,
                          const std::vector<BenchmarkCell>& cells) {
  std::ostringstream out;
  out << "regime,n,noise_half_width,delta,repetition,f1,selected_count\n";
  for (const BenchmarkCell& cell : cells) {
    for (std::size_t rep = 0; rep < cell.f1.size(); ++rep) {
      out << regime << ',' << cell.n << ',' << number_text(cell.noise_half_width)
          << ',' << number_text(cell.delta) << ',' << rep << ','
          << number_text(cell.f1[rep]) << ',' << cell.selected[rep] << '\n';
    }
  }
  return out.str();
}

std::string bf_csv(const std::string& regime, const std::vector<BfCell>& cells) {
  std::ostringstream out;
  out << "regime,mode,n,repetition,log_bf\n";
  for (const BfCell& cell : cells) {
    for (std::size_t rep = 0; rep < cell.log_bf.size(); ++rep) {
      out << regime << ',' << prior_mode_name(cell.mode) << ',' << cell.n << ','
          << rep << ',' << number_text(cell.log_bf[rep]) << '\n';
    }
  }
  return out.str();
}

}  // namespace spikeslab
