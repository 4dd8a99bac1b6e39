#include "fqlga_cli/result_table.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace fqlga::cli {

namespace {

constexpr std::string_view kTypesKey = "types";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    parts.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view type_name(ColumnType t) { return t == ColumnType::integer ? "int" : "real"; }

std::string format_cell(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return format_real(std::get<double>(cell));
}

}  // namespace

double as_double(const Cell& cell) {
  return std::visit([](auto v) { return static_cast<double>(v); }, cell);
}

ResultTable::ResultTable(std::vector<Column> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("ResultTable: at least one column required");
  for (const auto& c : columns_)
    if (c.name.empty() || c.name.find_first_of(",#\n") != std::string::npos)
      throw std::invalid_argument("ResultTable: invalid column name '" + c.name + "'");
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("ResultTable: row has " + std::to_string(row.size()) +
                                " cells, expected " + std::to_string(columns_.size()));
  for (std::size_t k = 0; k < row.size(); ++k) {
    const bool is_int = std::holds_alternative<std::int64_t>(row[k]);
    if (is_int != (columns_[k].type == ColumnType::integer))
      throw std::invalid_argument("ResultTable: cell type mismatch in column '" + columns_[k].name + "'");
  }
  rows_.push_back(std::move(row));
}

std::size_t ResultTable::column_index(std::string_view name) const {
  for (std::size_t k = 0; k < columns_.size(); ++k)
    if (columns_[k].name == name) return k;
  throw std::out_of_range("ResultTable: no column '" + std::string(name) + "'");
}

bool ResultTable::has_column(std::string_view name) const {
  return std::any_of(columns_.begin(), columns_.end(), [&](const Column& c) { return c.name == name; });
}

std::vector<double> ResultTable::column_values(std::string_view name) const {
  const std::size_t k = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(as_double(row[k]));
  return out;
}

void ResultTable::set_provenance(std::string key, std::string value) {
  if (key.empty() || key == kTypesKey || key.find_first_of(":\n") != std::string::npos ||
      value.find('\n') != std::string::npos)
    throw std::invalid_argument("ResultTable: invalid provenance entry '" + key + "'");
  for (auto& [k, v] : provenance_)
    if (k == key) {
      v = std::move(value);
      return;
    }
  provenance_.emplace_back(std::move(key), std::move(value));
}

std::string ResultTable::provenance_value(std::string_view key) const {
  for (const auto& [k, v] : provenance_)
    if (k == key) return v;
  return {};
}

std::string format_real(double value) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf.data(), end);
}

CsvError::CsvError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

std::string to_csv(const ResultTable& table) {
  std::string out;
  for (const auto& [k, v] : table.provenance()) out += "# " + k + ": " + v + "\n";
  out += "# types: ";
  for (std::size_t k = 0; k < table.columns().size(); ++k) {
    if (k) out += ',';
    out += type_name(table.columns()[k].type);
  }
  out += '\n';
  for (std::size_t k = 0; k < table.columns().size(); ++k) {
    if (k) out += ',';
    out += table.columns()[k].name;
  }
  out += '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_cell(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string csv_body(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == '#') {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) return {};
    pos = nl + 1;
  }
  return std::string(text.substr(pos));
}

ResultTable parse_csv(std::string_view text, const std::string& source) {
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<ColumnType> types;
  std::optional<ResultTable> table;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!table && !line.empty() && line.front() == '#') {
      const auto body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string key(trim(body.substr(0, colon)));
      const std::string value(trim(body.substr(colon + 1)));
      if (key == kTypesKey) {
        types.clear();
        for (auto t : split(value, ',')) {
          if (t == "int") types.push_back(ColumnType::integer);
          else if (t == "real") types.push_back(ColumnType::real);
          else throw CsvError(source, line_no, "unknown column type '" + std::string(t) + "'");
        }
      } else {
        provenance.emplace_back(key, value);
      }
      continue;
    }
    if (trim(line).empty()) continue;

    if (!table) {
      const auto names = split(line, ',');
      if (types.empty()) types.assign(names.size(), ColumnType::real);
      if (types.size() != names.size())
        throw CsvError(source, line_no, "header has " + std::to_string(names.size()) +
                                            " columns but types line lists " + std::to_string(types.size()));
      std::vector<Column> columns;
      for (std::size_t k = 0; k < names.size(); ++k) columns.push_back({std::string(names[k]), types[k]});
      try {
        table.emplace(std::move(columns));
      } catch (const std::invalid_argument& e) {
        throw CsvError(source, line_no, e.what());
      }
      for (auto& [k, v] : provenance) table->set_provenance(k, v);
      continue;
    }

    const auto fields = split(line, ',');
    if (fields.size() != types.size())
      throw CsvError(source, line_no, "expected " + std::to_string(types.size()) + " fields, found " +
                                          std::to_string(fields.size()));
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const auto f = fields[k];
      const char* first = f.data();
      const char* last = f.data() + f.size();
      if (types[k] == ColumnType::integer) {
        std::int64_t v = 0;
        const auto [p, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || p != last)
          throw CsvError(source, line_no, "column " + std::to_string(k + 1) + ": bad integer '" + std::string(f) + "'");
        row.emplace_back(v);
      } else {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || p != last)
          throw CsvError(source, line_no, "column " + std::to_string(k + 1) + ": bad real '" + std::string(f) + "'");
        row.emplace_back(v);
      }
    }
    table->add_row(std::move(row));
  }
  if (!table) throw CsvError(source, line_no, "missing header row");
  return *std::move(table);
}

void write_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << to_csv(table);
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

ResultTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_csv(text.str(), path.string());
}

}  // namespace fqlga::cli
