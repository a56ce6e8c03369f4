#include "spikeslab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <ostream>

#include "spikeslab/analysis.hpp"
#include "spikeslab/csv.hpp"
#include "spikeslab/dataset.hpp"
#include "spikeslab/errors.hpp"
#include "spikeslab/gibbs.hpp"
#include "spikeslab/model.hpp"
#include "spikeslab/report.hpp"
#include "spikeslab/synthetic.hpp"

namespace spikeslab {

namespace {

// Long unconditional chains can wander into slice states whose acceptance
// region holds almost no proposal mass; the command line ships a budget
// generous enough that such states resolve in seconds instead of aborting.
constexpr std::size_t kCliSliceRejectionCap = 100000000;

// The threshold grid of the selection study, largest to smallest plus the
// unrestricted baseline.
const std::vector<double> kDefaultDeltaGrid = {0.8, 0.5, 0.05, 0.01, 0.001, 0.0};

std::string csv_mirror_path(const std::string& json_path) {
  const std::string suffix = ".json";
  if (json_path.size() > suffix.size() &&
      json_path.compare(json_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return json_path.substr(0, json_path.size() - suffix.size()) + ".csv";
  }
  return json_path + ".csv";
}

SamplerSettings settings_from(const RunConfig& rc) {
  SamplerSettings settings;
  settings.iterations = rc.iterations;
  settings.burn_in_fraction = rc.burn_in;
  settings.seed = rc.seed;
  settings.slice_rejection_cap = kCliSliceRejectionCap;
  return settings;
}

// Shared ingestion for the data-driven commands.
std::pair<Dataset, NormalizationInfo> load_dataset(const RunConfig& rc) {
  const CsvTable table = read_csv_file(rc.input_path);
  Dataset data = dataset_from_table(table, rc.response, rc.log_response);
  NormalizationInfo normalization;
  if (rc.normalize) normalization = normalize_dataset(data);
  return {std::move(data), normalization};
}

void cmd_fit(const RunConfig& rc, std::ostream& out) {
  auto [dataset, normalization] = load_dataset(rc);
  const PriorConfig prior =
      PriorConfig::calibrated(rc.delta_grid.front(), parse_prior_mode(rc.mode));
  const RegressionData data(dataset.x, dataset.y);
  const SamplerSettings settings = settings_from(rc);
  const SampleStore store = run_chain(data, prior, settings);
  write_json_file(rc.output_path,
                  fit_report(rc, dataset, normalization, prior, settings, store));
  out << "wrote " << rc.output_path << "\n";
}

void cmd_select_delta(const RunConfig& rc, std::ostream& out) {
  auto [dataset, normalization] = load_dataset(rc);
  const RegressionData data(dataset.x, dataset.y);
  PriorConfig cfg_template;  // hyperparameter defaults; delta comes per grid entry
  const DeltaSelection selection =
      select_delta(data, rc.delta_grid, cfg_template, settings_from(rc),
                   rc.threshold, rc.jobs);
  write_json_file(rc.output_path,
                  select_delta_report(rc, dataset, normalization, selection));
  out << "wrote " << rc.output_path << "\n";
}

void cmd_synth(const RunConfig& rc, std::ostream& out) {
  BenchmarkConfig cfg;
  cfg.regime = parse_regime(rc.regime);
  cfg.n_grid = rc.n_grid;
  cfg.noise_grid = rc.noise_grid;
  cfg.delta_grid = rc.delta_grid;
  cfg.repetitions = rc.repetitions;
  cfg.settings = settings_from(rc);
  cfg.workers = rc.jobs;
  const std::vector<BenchmarkCell> cells = f1_benchmark(cfg);
  write_json_file(rc.output_path, benchmark_report(rc, cells));
  const std::string csv_path = csv_mirror_path(rc.output_path);
  write_text_file(csv_path, benchmark_csv(rc.regime, cells));
  out << "wrote " << rc.output_path << "\n";
  out << "wrote " << csv_path << "\n";
}

void cmd_bf(const RunConfig& rc, std::ostream& out) {
  BfExperimentConfig cfg;
  cfg.regime = parse_regime(rc.regime);
  cfg.n_grid = rc.n_grid;
  cfg.noise_half_width = rc.noise_grid.front();
  cfg.repetitions = rc.repetitions;
  cfg.delta = rc.delta_grid.front();
  cfg.settings = settings_from(rc);
  cfg.workers = rc.jobs;
  const std::vector<BfCell> cells = bf_growth_experiment(cfg);
  write_json_file(rc.output_path, bf_report(rc, cells));
  const std::string csv_path = csv_mirror_path(rc.output_path);
  write_text_file(csv_path, bf_csv(rc.regime, cells));
  out << "wrote " << rc.output_path << "\n";
  out << "wrote " << csv_path << "\n";
}

void add_sampler_flags(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--iterations", rc.iterations, "Gibbs iterations per chain")
      ->capture_default_str();
  cmd->add_option("--burn-in", rc.burn_in, "burn-in fraction in [0, 1)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 0.999999));
  cmd->add_option("--seed", rc.seed, "master random seed")->capture_default_str();
  cmd->add_option("--jobs", rc.jobs, "worker threads for independent chains")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_data_flags(CLI::App* cmd, RunConfig& rc, std::string& normalize_text) {
  cmd->add_option("--input", rc.input_path, "input CSV file")->required();
  cmd->add_option("--response", rc.response,
                  "response column name (default: last column)");
  cmd->add_option("--normalize", normalize_text,
                  "standardize covariates and response ('on' or 'off')")
      ->capture_default_str()
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_flag("--log-response", rc.log_response,
                "log-transform the response before normalization");
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  std::string normalize_text = "on";

  CLI::App app{"Bayesian variable selection with disjunct-support spike-and-slab priors"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read flags from an INI/TOML file ([subcommand] sections)");

  CLI::App* fit = app.add_subcommand("fit", "fit one chain on a CSV and report the posterior");
  double fit_delta = 0.5;
  std::string fit_mode = "disjunct";
  add_data_flags(fit, rc, normalize_text);
  fit->add_option("--delta", fit_delta, "practical-relevance threshold")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  fit->add_option("--mode", fit_mode, "prior support: 'disjunct' or 'full'")
      ->capture_default_str()
      ->check(CLI::IsMember({"disjunct", "full"}));
  add_sampler_flags(fit, rc);
  fit->add_option("--output", rc.output_path, "report JSON path")->required();

  CLI::App* sel = app.add_subcommand(
      "select-delta", "sweep a threshold grid and pick one by expected MSE increase");
  std::vector<double> sel_grid = kDefaultDeltaGrid;
  add_data_flags(sel, rc, normalize_text);
  sel->add_option("--delta-grid", sel_grid, "thresholds to sweep")
      ->delimiter(',')
      ->capture_default_str();
  sel->add_option("--threshold", rc.threshold,
                  "acceptable relative MSE increase for selection")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  add_sampler_flags(sel, rc);
  sel->add_option("--output", rc.output_path, "report JSON path")->required();

  CLI::App* synth = app.add_subcommand(
      "synth", "selection benchmark on generated regression data");
  std::vector<double> synth_deltas = {0.5};
  synth->add_option("--regime", rc.regime, "data regime: 'low' (d=8) or 'high' (d=1000)")
      ->capture_default_str()
      ->check(CLI::IsMember({"low", "high"}));
  synth->add_option("--n-grid", rc.n_grid, "sample sizes")->delimiter(',')->required();
  synth->add_option("--noise-grid", rc.noise_grid,
                    "half-widths of the uniform noise on small coefficients")
      ->delimiter(',')
      ->capture_default_str();
  synth->add_option("--delta-grid", synth_deltas, "thresholds to analyze at")
      ->delimiter(',')
      ->capture_default_str();
  synth->add_option("--repetitions", rc.repetitions, "datasets per cell")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_sampler_flags(synth, rc);
  synth->add_option("--output", rc.output_path, "report JSON path (CSV mirror alongside)")
      ->required();

  CLI::App* bf = app.add_subcommand(
      "bf", "Bayes-factor growth experiment: disjunct vs full support");
  double bf_delta = 0.5;
  double bf_noise = 0.0;
  bf->add_option("--regime", rc.regime, "data regime: 'low' (d=8) or 'high' (d=1000)")
      ->capture_default_str()
      ->check(CLI::IsMember({"low", "high"}));
  bf->add_option("--n-grid", rc.n_grid, "sample sizes")->delimiter(',')->required();
  bf->add_option("--noise", bf_noise,
                 "half-width of the uniform noise on small coefficients")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  bf->add_option("--delta", bf_delta, "practical-relevance threshold")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  bf->add_option("--repetitions", rc.repetitions, "datasets per cell")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_sampler_flags(bf, rc);
  bf->add_option("--output", rc.output_path, "report JSON path (CSV mirror alongside)")
      ->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);

    rc.normalize = normalize_text == "on";
    if (fit->parsed()) {
      rc.command = "fit";
      rc.delta_grid = {fit_delta};
      rc.mode = fit_mode;
      cmd_fit(rc, out);
    } else if (sel->parsed()) {
      rc.command = "select-delta";
      rc.delta_grid = sel_grid;
      cmd_select_delta(rc, out);
    } else if (synth->parsed()) {
      rc.command = "synth";
      rc.delta_grid = synth_deltas;
      if (rc.noise_grid.empty()) rc.noise_grid = {0.0};
      cmd_synth(rc, out);
    } else {
      rc.command = "bf";
      rc.delta_grid = {bf_delta};
      rc.noise_grid = {bf_noise};
      cmd_bf(rc, out);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const validation_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace spikeslab
