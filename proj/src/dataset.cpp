#include "spikeslab/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "spikeslab/errors.hpp"

namespace spikeslab {

Dataset dataset_from_table(const CsvTable& table, const std::string& response_name,
                           bool log_response) {
  if (table.n_cols() < 2) {
    throw validation_error(
        "dataset needs at least one covariate column and one response column");
  }
  if (table.n_rows() == 0) throw validation_error("dataset has no data rows");
  {
    std::set<std::string> seen;
    for (const std::string& name : table.header) {
      if (!seen.insert(name).second) {
        throw validation_error("duplicate column name: '" + name + "'");
      }
    }
  }

  std::size_t response_col = table.n_cols() - 1;
  if (!response_name.empty()) {
    const auto it =
        std::find(table.header.begin(), table.header.end(), response_name);
    if (it == table.header.end()) {
      throw validation_error("response column '" + response_name +
                             "' not found in header");
    }
    response_col = static_cast<std::size_t>(it - table.header.begin());
  }

  Dataset data;
  data.response_name = table.header[response_col];
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c != response_col) data.covariate_names.push_back(table.header[c]);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(table.n_rows());
  const Eigen::Index d = static_cast<Eigen::Index>(table.n_cols() - 1);
  data.x.resize(n, d);
  data.y.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::vector<double>& row = table.rows[static_cast<std::size_t>(r)];
    Eigen::Index out = 0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == response_col) {
        data.y[r] = row[c];
      } else {
        data.x(r, out++) = row[c];
      }
    }
  }

  if (log_response) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (!(data.y[r] > 0.0)) {
        std::ostringstream msg;
        msg << "log transform needs a positive response; row " << (r + 2)
            << " has " << data.y[r];
        throw validation_error(msg.str());
      }
      data.y[r] = std::log(data.y[r]);
    }
  }
  return data;
}

namespace {

// Population mean and standard deviation of one column.
std::pair<double, double> column_moments(const Eigen::VectorXd& column) {
  const double mean = column.mean();
  const double var = (column.array() - mean).square().mean();
  return {mean, std::sqrt(var)};
}

}  // namespace

NormalizationInfo normalize_dataset(Dataset& data, double response_variance_target) {
  if (!(response_variance_target > 0.0)) {
    throw validation_error("response variance target must be positive");
  }
  NormalizationInfo info;
  info.applied = true;
  info.response_variance_target = response_variance_target;

  for (Eigen::Index c = 0; c < data.dim(); ++c) {
    const auto [mean, sd] = column_moments(data.x.col(c));
    if (!(sd > 0.0)) {
      throw validation_error(
          "covariate column '" + data.covariate_names[static_cast<std::size_t>(c)] +
          "' is constant and cannot be standardized");
    }
    data.x.col(c) = (data.x.col(c).array() - mean) / sd;
    info.covariate_means.push_back(mean);
    info.covariate_sds.push_back(sd);
  }

  const auto [y_mean, y_sd] = column_moments(data.y);
  if (!(y_sd > 0.0)) {
    throw validation_error(
        "response column '" + data.response_name +
        "' is constant and cannot be scaled to the target variance");
  }
  data.y = (data.y.array() - y_mean) / y_sd * std::sqrt(response_variance_target);
  info.response_mean = y_mean;
  info.response_sd = y_sd;
  return info;
}

}  // namespace spikeslab
