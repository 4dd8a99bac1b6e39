// Typed numeric tables and their CSV form.
//
// Layout on disk:
//   # key: value          provenance, one per line, insertion order
//   # types: int,real,...
//   col_a,col_b,...
//   rows...
// Reals use the shortest decimal string that round-trips to the same double.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fqlga::cli {

enum class ColumnType { integer, real };

struct Column {
  std::string name;
  ColumnType type = ColumnType::real;

  friend bool operator==(const Column&, const Column&) = default;
};

using Cell = std::variant<std::int64_t, double>;

double as_double(const Cell& cell);

class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<Column> columns);

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  // Throws std::invalid_argument if the row length or a cell's type disagrees
  // with the column declaration.
  void add_row(std::vector<Cell> row);

  // Index of the named column, or throws std::out_of_range.
  std::size_t column_index(std::string_view name) const;
  bool has_column(std::string_view name) const;
  std::vector<double> column_values(std::string_view name) const;

  void set_provenance(std::string key, std::string value);
  const std::vector<std::pair<std::string, std::string>>& provenance() const { return provenance_; }
  // Empty string when the key is absent.
  std::string provenance_value(std::string_view key) const;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> provenance_;
};

// Shortest round-trip decimal form.
std::string format_real(double value);

class CsvError : public std::runtime_error {
 public:
  CsvError(std::string source, std::size_t line, const std::string& message);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string to_csv(const ResultTable& table);
// Text after the last provenance/types comment; used for byte comparisons.
std::string csv_body(std::string_view csv_text);

ResultTable parse_csv(std::string_view text, const std::string& source = "<memory>");

// Throw IoError on filesystem failures, CsvError on malformed content.
void write_csv(const ResultTable& table, const std::filesystem::path& path);
ResultTable read_csv(const std::filesystem::path& path);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fqlga::cli
