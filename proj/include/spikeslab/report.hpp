#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "spikeslab/analysis.hpp"
#include "spikeslab/dataset.hpp"
#include "spikeslab/model.hpp"
#include "spikeslab/synthetic.hpp"

namespace spikeslab {

// Insertion-ordered JSON keeps every report byte-deterministic for a given
// configuration and seed.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

// Everything the command line resolved for one invocation; serialized into
// each report so the run can be reproduced from its output alone.
struct RunConfig {
  std::string command;
  std::string input_path;
  std::string response;  // column name; empty means the last column
  std::vector<double> delta_grid;
  std::size_t iterations = 10000;
  double burn_in = 0.1;
  std::uint64_t seed = 0;
  std::string mode = "disjunct";
  bool normalize = true;
  bool log_response = false;
  double threshold = 0.05;
  std::string output_path;
  std::size_t jobs = 1;
  std::string regime = "low";
  std::vector<std::size_t> n_grid;
  std::vector<double> noise_grid;
  std::size_t repetitions = 10;

  bool operator==(const RunConfig&) const = default;
};

Json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);  // throws parse_error

// String forms used by flags and reports.
PriorMode parse_prior_mode(const std::string& name);   // "disjunct" | "full"
std::string prior_mode_name(PriorMode mode);
Regime parse_regime(const std::string& name);          // "low" | "high"
std::string regime_name(Regime regime);

// JSON has no infinity literal, so non-finite numbers serialize as the
// strings "inf" / "-inf"; everything else stays a plain number.
Json json_number(double value);

// Shortest round-trip decimal form of a value, also used by the CSV
// mirrors; non-finite values come out as inf / -inf.
std::string number_text(double value);

// Serializes with two-space indentation and a trailing newline, creating or
// truncating the file; failures raise validation_error.
void write_json_file(const std::string& path, const Json& report);

// Parses a report previously written by write_json_file.
Json read_json_file(const std::string& path);

// Report assembly.  Each builder emits schema_version, the run
// configuration, and the command's results; nothing in a report depends on
// anything but inputs, configuration, and seed.
Json fit_report(const RunConfig& run, const Dataset& data,
                const NormalizationInfo& normalization, const PriorConfig& prior,
                const SamplerSettings& settings, const SampleStore& store,
                std::size_t top_k = 10);

Json select_delta_report(const RunConfig& run, const Dataset& data,
                         const NormalizationInfo& normalization,
                         const DeltaSelection& selection);

Json benchmark_report(const RunConfig& run, const std::vector<BenchmarkCell>& cells);

Json bf_report(const RunConfig& run, const std::vector<BfCell>& cells);

// CSV mirrors of the tabular reports: one row per repetition.
std::string benchmark_csv(const std::string& regime,
                          const std::vector<BenchmarkCell>& cells);
std::string bf_csv(const std::string& regime, const std::vector<BfCell>& cells);

// Writes text to a file verbatim; failures raise validation_error.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace spikeslab
