#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spikeslab/cli.hpp"
#include "spikeslab/errors.hpp"
#include "spikeslab/report.hpp"
#include "spikeslab/synthetic.hpp"

using namespace spikeslab;

namespace {

const std::filesystem::path kTmp = "test_cli_tmp";

// Runs the CLI with throw-away streams and returns the exit code.
int run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  return run_cli(args, out, err);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// A small generated regression table written as a CSV fixture.
std::string write_fixture_csv(const std::string& name, std::size_t n,
                              std::uint64_t seed) {
  SyntheticSpec spec;
  spec.regime = Regime::LowDim;
  spec.n = n;
  spec.seed = seed;
  const SyntheticInstance instance = generate(spec);

  std::filesystem::create_directories(kTmp);
  const std::filesystem::path path = kTmp / name;
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out);
  for (Eigen::Index j = 0; j < instance.data.x.cols(); ++j) {
    out << 'x' << (j + 1) << ',';
  }
  out << "y\n";
  for (Eigen::Index i = 0; i < instance.data.x.rows(); ++i) {
    for (Eigen::Index j = 0; j < instance.data.x.cols(); ++j) {
      out << number_text(instance.data.x(i, j)) << ',';
    }
    out << number_text(instance.data.y[i]) << '\n';
  }
  return path.string();
}

}  // namespace

TEST_CASE("run config round-trips through json") {
  RunConfig cfg;
  cfg.command = "select-delta";
  cfg.input_path = "data.csv";
  cfg.response = "y";
  cfg.delta_grid = {0.8, 0.5, 0.0};
  cfg.iterations = 2500;
  cfg.burn_in = 0.2;
  cfg.seed = 987654321;
  cfg.mode = "full";
  cfg.normalize = false;
  cfg.log_response = true;
  cfg.threshold = 0.01;
  cfg.output_path = "out.json";
  cfg.jobs = 3;
  cfg.regime = "high";
  cfg.n_grid = {100, 1000};
  cfg.noise_grid = {0.0, 0.5};
  cfg.repetitions = 7;

  CHECK(run_config_from_json(run_config_to_json(cfg)) == cfg);

  Json broken = run_config_to_json(cfg);
  broken.erase("seed");
  CHECK_THROWS_AS(run_config_from_json(broken), parse_error);
}

TEST_CASE("sentinel numbers serialize as strings") {
  CHECK(json_number(1.5) == Json(1.5));
  CHECK(json_number(std::numeric_limits<double>::infinity()) == Json("inf"));
  CHECK(json_number(-std::numeric_limits<double>::infinity()) == Json("-inf"));
  CHECK(number_text(0.5) == "0.5");
  CHECK(number_text(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("fit writes a deterministic posterior report") {
  const std::string csv = write_fixture_csv("fit_input.csv", 80, 11);
  const std::string report_path = (kTmp / "fit_report.json").string();
  const std::vector<std::string> args = {
      "fit",          "--input", csv,  "--output",     report_path,
      "--delta",      "0.5",     "--iterations", "1500",
      "--seed",       "42"};

  REQUIRE(run(args) == 0);
  const std::string first_bytes = slurp(report_path);

  const Json report = read_json_file(report_path);
  CHECK(report.at("schema_version") == 1);
  CHECK(report.at("run_config").at("command") == "fit");
  CHECK(report.at("prior").at("mode") == "disjunct");
  CHECK(report.at("prior").contains("sigma0_sq"));
  CHECK(report.at("normalization").at("applied") == true);
  CHECK(report.at("data").at("n") == 80);
  const Json& results = report.at("results");
  REQUIRE(results.at("inclusion_probabilities").size() == 8);
  // Strong signals on the fixture: the true heavy coefficients dominate.
  CHECK(results.at("inclusion_probabilities")[0].at("probability").get<double>() > 0.9);
  CHECK(results.at("top_models").size() >= 1);

  // The round-trip of the embedded run configuration is exact.
  const RunConfig parsed = run_config_from_json(report.at("run_config"));
  CHECK(parsed.command == "fit");
  CHECK(parsed.seed == 42);
  CHECK(run_config_to_json(parsed) == report.at("run_config"));

  // Identical invocation, byte-identical file.
  REQUIRE(run(args) == 0);
  CHECK(slurp(report_path) == first_bytes);
}

TEST_CASE("fit at delta zero omits the spike variance") {
  const std::string csv = write_fixture_csv("fit_zero.csv", 60, 12);
  const std::string report_path = (kTmp / "fit_zero.json").string();
  REQUIRE(run({"fit", "--input", csv, "--output", report_path, "--delta", "0",
               "--iterations", "800", "--seed", "1"}) == 0);
  const Json report = read_json_file(report_path);
  CHECK(!report.at("prior").contains("sigma0_sq"));
}

TEST_CASE("cli maps failures to the documented exit codes") {
  const std::string csv = write_fixture_csv("codes.csv", 40, 13);
  const std::string out_path = (kTmp / "codes.json").string();

  // Flag problems and bad input data: exit 2.
  CHECK(run({"fit", "--input", csv}) == 2);                  // --output missing
  CHECK(run({"nonsense"}) == 2);                             // unknown command
  CHECK(run({"fit", "--input", "missing_file.csv", "--output", out_path}) == 2);
  CHECK(run({"fit", "--input", csv, "--output", out_path, "--mode", "full",
             "--delta", "0"}) == 2);                         // invalid combination

  std::filesystem::create_directories(kTmp);
  const std::string broken = (kTmp / "broken.csv").string();
  std::ofstream(broken) << "a,b\n1,2\n3\n";
  CHECK(run({"fit", "--input", broken, "--output", out_path}) == 2);

  // Infeasible calibration is a numerical failure: exit 3.
  CHECK(run({"fit", "--input", csv, "--output", out_path, "--delta", "50"}) == 3);

  // Help is a successful run.
  CHECK(run({"--help"}) == 0);
}

TEST_CASE("select-delta reports the sweep and its selection") {
  const std::string csv = write_fixture_csv("select_input.csv", 120, 14);
  const std::string report_path = (kTmp / "select_report.json").string();
  REQUIRE(run({"select-delta", "--input", csv, "--output", report_path,
               "--delta-grid", "0.5,0", "--iterations", "1200", "--seed", "7"}) == 0);

  const Json report = read_json_file(report_path);
  CHECK(report.at("schema_version") == 1);
  const double mse_bma = report.at("baseline").at("mse_bma").get<double>();
  CHECK(mse_bma > 0.0);
  REQUIRE(report.at("records").size() == 2);
  for (const Json& record : report.at("records")) {
    // The reported increase is exactly mse / mse_bma - 1.
    const double mse = record.at("mse").get<double>();
    const double increase = record.at("expected_increase").get<double>();
    CHECK(increase == doctest::Approx(mse / mse_bma - 1.0).epsilon(1e-12));
  }
  CHECK(report.at("selected").contains("model"));
  CHECK(report.at("selected").at("delta").is_number());
}

TEST_CASE("synth emits matching json and csv tables") {
  const std::string report_path = (kTmp / "synth_report.json").string();
  std::filesystem::create_directories(kTmp);
  const std::vector<std::string> args = {
      "synth",        "--n-grid", "60",  "--repetitions", "2",
      "--iterations", "500",      "--seed", "3",          "--output", report_path};
  REQUIRE(run(args) == 0);

  const Json report = read_json_file(report_path);
  REQUIRE(report.at("cells").size() == 1);
  const Json& cell = report.at("cells")[0];
  CHECK(cell.at("n") == 60);
  CHECK(cell.at("f1").size() == 2);
  CHECK(cell.at("mean_f1").is_number());

  const std::string csv_text = slurp(kTmp / "synth_report.csv");
  std::size_t lines = 0;
  for (const char c : csv_text) lines += c == '\n';
  CHECK(lines == 3);  // header + one row per repetition
  CHECK(csv_text.rfind("regime,n,noise_half_width,delta,repetition,f1,selected_count",
                       0) == 0);

  // Same invocation, byte-identical json and csv.
  const std::string json_bytes = slurp(report_path);
  REQUIRE(run(args) == 0);
  CHECK(slurp(report_path) == json_bytes);
  CHECK(slurp(kTmp / "synth_report.csv") == csv_text);
}

TEST_CASE("bf emits per-mode cells with sentinel-aware entries") {
  const std::string report_path = (kTmp / "bf_report.json").string();
  std::filesystem::create_directories(kTmp);
  REQUIRE(run({"bf", "--n-grid", "60", "--repetitions", "1", "--iterations",
               "400", "--seed", "9", "--output", report_path}) == 0);

  const Json report = read_json_file(report_path);
  REQUIRE(report.at("cells").size() == 2);
  CHECK(report.at("cells")[0].at("mode") == "disjunct");
  CHECK(report.at("cells")[1].at("mode") == "full");
  for (const Json& cell : report.at("cells")) {
    CHECK(cell.at("n") == 60);
    REQUIRE(cell.at("log_bf").size() == 1);
    const Json& entry = cell.at("log_bf")[0];
    CHECK((entry.is_number() || entry == Json("inf") || entry == Json("-inf")));
  }
  const std::string csv_text = slurp(kTmp / "bf_report.csv");
  CHECK(csv_text.rfind("regime,mode,n,repetition,log_bf", 0) == 0);
}
