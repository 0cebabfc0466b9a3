#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace trispin {

enum class ColumnKind { integer, real, text };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::real;

  friend bool operator==(const Column&, const Column&) = default;
};

using Cell = std::variant<std::int64_t, double, std::string>;

/// Rectangular result table plus an ordered list of scalar summary values.
///
/// CSV layout: one `# key=value` line per meta entry, a header row, then data
/// rows; comma separated, LF line endings. JSON layout:
///   {"meta": {...}, "columns": [{"name": .., "type": ..}], "rows": [{..}, ..]}
/// Reals are always written as %.16e (17 significant digits, scientific), so
/// identical tables serialize to identical bytes and parse back bit-exactly.
struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, double>> meta;

  /// Appends a row; throws std::invalid_argument when the arity or a cell kind mismatches.
  void add_row(std::vector<Cell> row);
  /// Value of a meta entry; throws std::out_of_range when absent.
  double meta_value(std::string_view key) const;
  /// Index of a named column; throws std::out_of_range when absent.
  std::size_t column_index(std::string_view name) const;

  friend bool operator==(const Table&, const Table&) = default;
};

enum class Format { csv, json };

std::string format_real(double value);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);
std::string serialize(const Table& table, Format format);

/// Readers for the two layouts above. Throw std::runtime_error on malformed input.
Table parse_csv(std::string_view text);
Table parse_json(std::string_view text);
Table parse(std::string_view text, Format format);

}  // namespace trispin
