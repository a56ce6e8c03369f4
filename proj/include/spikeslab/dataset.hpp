#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spikeslab/csv.hpp"

namespace spikeslab {

// Covariates and response split out of a parsed table, ready for fitting.
struct Dataset {
  Eigen::MatrixXd x;  // n rows, one column per covariate
  Eigen::VectorXd y;
  std::vector<std::string> covariate_names;
  std::string response_name;

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index dim() const { return x.cols(); }
};

// Splits a table into covariates and response.  The response column is
// picked by name, or defaults to the last column when the name is empty.
// When log_response is set the response is log-transformed first; this
// requires strictly positive values.  Duplicate column names, an unknown
// response name, fewer than two columns, or an empty table are rejected
// with validation_error.
Dataset dataset_from_table(const CsvTable& table,
                           const std::string& response_name = "",
                           bool log_response = false);

// Per-column standardization applied by normalize_dataset, recorded for the
// report.  All moments use the population (1/n) convention.
struct NormalizationInfo {
  bool applied = false;
  std::vector<double> covariate_means;
  std::vector<double> covariate_sds;
  double response_mean = 0.0;
  double response_sd = 0.0;
  double response_variance_target = 30.0;
};

// Centers every covariate to mean 0 / variance 1 and the response to mean 0
// and the target variance, in place.  A constant column (zero population
// variance) cannot be standardized and raises validation_error naming it.
NormalizationInfo normalize_dataset(Dataset& data,
                                    double response_variance_target = 30.0);

}  // namespace spikeslab
