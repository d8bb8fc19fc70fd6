#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "magnon/error.hpp"
#include "magnon/lab/config.hpp"

namespace magnon::lab {

using Cell = std::variant<double, std::string>;

/// Rectangular table with named columns and "# key: value" provenance lines.
class ResultTable {
public:
  explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw ShapeError("a table needs at least one column");
    for (const auto& c : columns_) check_text(c);
  }

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  std::size_t n_rows() const noexcept { return rows_.size(); }
  const Cell& at(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
      throw ShapeError("row has " + std::to_string(row.size()) + " cells, table has " + std::to_string(columns_.size()) + " columns");
    for (const auto& c : row)
      if (const auto* s = std::get_if<std::string>(&c)) check_text(*s);
    rows_.push_back(std::move(row));
  }

  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
      if (columns_[i] == name) return i;
    throw ShapeError("no column named " + name);
  }

  std::vector<double> numeric_column(const std::string& name) const {
    const std::size_t c = column_index(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) {
      const auto* v = std::get_if<double>(&r[c]);
      if (!v) throw ShapeError("column " + name + " is not numeric");
      out.push_back(*v);
    }
    return out;
  }

  std::vector<std::pair<std::string, std::string>>& provenance() noexcept { return provenance_; }
  const std::vector<std::pair<std::string, std::string>>& provenance() const noexcept { return provenance_; }

  void set_provenance(const std::string& key, const std::string& value) {
    check_text(key);
    if (value.find('\n') != std::string::npos) throw ShapeError("provenance value contains a newline");
    for (auto& [k, v] : provenance_) {
      if (k == key) {
        v = value;
        return;
      }
    }
    provenance_.emplace_back(key, value);
  }

private:
  static void check_text(const std::string& s) {
    if (s.find_first_of(",\n\r\"") != std::string::npos) throw ShapeError("text cell contains a separator: " + s);
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> provenance_;
};

inline constexpr const char* kCodeVersion = "1.0.0";

/// Stamps experiment, config hash, seed, code version and the resolved
/// configuration onto a table.
inline void stamp(ResultTable& table, const ExperimentConfig& config) {
  table.set_provenance("experiment", to_string(config.experiment()));
  table.set_provenance("config_hash", config.hash());
  table.set_provenance("seed", std::to_string(config.seed()));
  table.set_provenance("code_version", kCodeVersion);
  for (const auto& [k, v] : config.values()) table.set_provenance("config." + k, v);
}

/// 17 significant digits; parses back to the same double.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string to_csv(const ResultTable& table) {
  std::string out;
  for (const auto& [k, v] : table.provenance()) out += "# " + k + ": " + v + "\n";
  for (std::size_t i = 0; i < table.columns().size(); ++i) {
    if (i) out += ',';
    out += table.columns()[i];
  }
  out += '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* d = std::get_if<double>(&row[i])) out += format_real(*d);
      else out += std::get<std::string>(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

inline void emit_csv(const ResultTable& table, const std::filesystem::path& path) { write_text(path, to_csv(table)); }

inline ResultTable parse_csv(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> prov;
  std::optional<ResultTable> table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!table && line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ", 2);
      if (colon == std::string::npos) throw ShapeError("malformed provenance line: " + line);
      prov.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    std::vector<std::string> fields;
    for (auto f : detail::split(line, ',')) fields.emplace_back(f);
    if (!table) {
      table.emplace(std::move(fields));
      continue;
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (auto& f : fields) {
      if (auto v = detail::to_real(f)) row.emplace_back(*v);
      else row.emplace_back(std::move(f));
    }
    table->add_row(std::move(row));
  }
  if (!table) throw ShapeError("CSV has no header line");
  for (auto& [k, v] : prov) table->set_provenance(k, v);
  return std::move(*table);
}

inline ResultTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

} // namespace magnon::lab
