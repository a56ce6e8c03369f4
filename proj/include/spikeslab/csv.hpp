#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spikeslab {

// A parsed rectangular numeric table: a header row naming the columns
// followed by rows of numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // each of size header.size()

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return header.size(); }
};

// Strict comma-separated reader: UTF-8, mandatory header row, '.' decimal
// separator.  A leading byte-order mark is tolerated, header names may be
// double-quoted, completely empty lines are skipped, and everything else is
// enforced — ragged rows, empty cells, non-numeric or non-finite values all
// raise parse_error naming the 1-based row and column.
CsvTable read_csv(std::istream& in);

// read_csv on the named file; unreadable path raises parse_error.
CsvTable read_csv_file(const std::string& path);

}  // namespace spikeslab
