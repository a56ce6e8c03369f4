#include "spikeslab/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "spikeslab/errors.hpp"

namespace spikeslab {

namespace {

[[noreturn]] void fail(std::size_t row, std::size_t col, const std::string& what) {
  std::ostringstream msg;
  msg << "csv row " << row << ", column " << col << ": " << what;
  throw parse_error(msg.str());
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string trim(const std::string& field) {
  std::size_t begin = 0;
  std::size_t end = field.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(field[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(field[end - 1]))) --end;
  return field.substr(begin, end - begin);
}

std::string header_name(const std::string& field, std::size_t row, std::size_t col) {
  std::string name = trim(field);
  if (name.size() >= 2 && name.front() == '"' && name.back() == '"') {
    name = name.substr(1, name.size() - 2);
  }
  if (name.empty()) fail(row, col, "empty column name");
  return name;
}

double parse_cell(const std::string& field, std::size_t row, std::size_t col) {
  const std::string text = trim(field);
  if (text.empty()) fail(row, col, "empty cell");
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    fail(row, col, "not a number: '" + text + "'");
  }
  if (!std::isfinite(value)) fail(row, col, "non-finite value: '" + text + "'");
  return value;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (row == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    if (line.empty()) continue;

    const std::vector<std::string> fields = split_fields(line);
    if (table.header.empty()) {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        table.header.push_back(header_name(fields[c], row, c + 1));
      }
      continue;
    }
    if (fields.size() != table.header.size()) {
      fail(row, fields.size(),
           "expected " + std::to_string(table.header.size()) + " fields, found " +
               std::to_string(fields.size()));
    }
    std::vector<double> values;
    values.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      values.push_back(parse_cell(fields[c], row, c + 1));
    }
    table.rows.push_back(std::move(values));
  }
  if (table.header.empty()) throw parse_error("csv row 1, column 1: missing header row");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open csv file: " + path);
  return read_csv(in);
}

}  // namespace spikeslab
