#include "trispin/table_io.hpp"

#include <charconv>
#include <cstdio>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

namespace trispin {

namespace {

const char* kind_name(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::integer: return "integer";
    case ColumnKind::real: return "real";
    case ColumnKind::text: return "text";
  }
  return "real";
}

ColumnKind kind_from_name(std::string_view name) {
  if (name == "integer") return ColumnKind::integer;
  if (name == "real") return ColumnKind::real;
  if (name == "text") return ColumnKind::text;
  throw std::runtime_error("unknown column type '" + std::string(name) + "'");
}

bool cell_matches(const Cell& cell, ColumnKind kind) {
  switch (kind) {
    case ColumnKind::integer: return std::holds_alternative<std::int64_t>(cell);
    case ColumnKind::real: return std::holds_alternative<double>(cell);
    case ColumnKind::text: return std::holds_alternative<std::string>(cell);
  }
  return false;
}

std::string format_cell(const Cell& cell) {
  if (const auto* v = std::get_if<std::int64_t>(&cell)) return std::to_string(*v);
  if (const auto* v = std::get_if<double>(&cell)) return format_real(*v);
  return std::get<std::string>(cell);
}

std::string json_string(std::string_view text) { return nlohmann::json(text).dump(); }

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& token) {
  double value = 0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || token.empty()) throw std::runtime_error("bad real '" + token + "'");
  return value;
}

bool looks_integral(const std::string& token) {
  if (token.empty()) return false;
  std::size_t k = token[0] == '-' ? 1 : 0;
  if (k == token.size()) return false;
  for (; k < token.size(); ++k)
    if (token[k] < '0' || token[k] > '9') return false;
  return true;
}

Cell parse_token(const std::string& token, ColumnKind kind) {
  switch (kind) {
    case ColumnKind::integer: {
      std::int64_t v = 0;
      const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || end != token.data() + token.size())
        throw std::runtime_error("bad integer '" + token + "'");
      return v;
    }
    case ColumnKind::real: return parse_double(token);
    case ColumnKind::text: return token;
  }
  return token;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(columns.size()));
  for (std::size_t c = 0; c < row.size(); ++c)
    if (!cell_matches(row[c], columns[c].kind))
      throw std::invalid_argument("cell kind mismatch in column '" + columns[c].name + "'");
  rows.push_back(std::move(row));
}

double Table::meta_value(std::string_view key) const {
  for (const auto& [name, value] : meta)
    if (name == key) return value;
  throw std::out_of_range("no meta entry '" + std::string(key) + "'");
}

std::size_t Table::column_index(std::string_view name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c].name == name) return c;
  throw std::out_of_range("no column '" + std::string(name) + "'");
}

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.16e", value);
  return buffer;
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (const auto& [name, value] : table.meta) out << "# " << name << '=' << format_real(value) << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c].name;
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Table& table) {
  std::ostringstream out;
  out << "{\n  \"meta\": {";
  for (std::size_t k = 0; k < table.meta.size(); ++k)
    out << (k ? ", " : "") << json_string(table.meta[k].first) << ": "
        << format_real(table.meta[k].second);
  out << "},\n  \"columns\": [";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? ", " : "") << "{\"name\": " << json_string(table.columns[c].name)
        << ", \"type\": \"" << kind_name(table.columns[c].kind) << "\"}";
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n    " : "\n    ") << '{';
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? ", " : "") << json_string(table.columns[c].name) << ": ";
      if (const auto* text = std::get_if<std::string>(&row[c]))
        out << json_string(*text);
      else
        out << format_cell(row[c]);
    }
    out << '}';
  }
  out << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

std::string serialize(const Table& table, Format format) {
  return format == Format::csv ? to_csv(table) : to_json(table);
}

Table parse_csv(std::string_view text) {
  Table table;
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::size_t k = 0;
  for (; k < lines.size() && lines[k].starts_with("# "); ++k) {
    const std::string body = lines[k].substr(2);
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad meta line '" + lines[k] + "'");
    table.meta.emplace_back(body.substr(0, eq), parse_double(body.substr(eq + 1)));
  }
  if (k == lines.size()) throw std::runtime_error("csv has no header row");
  const std::vector<std::string> header = split(lines[k++], ',');
  std::vector<std::vector<std::string>> raw;
  for (; k < lines.size(); ++k) {
    raw.push_back(split(lines[k], ','));
    if (raw.back().size() != header.size())
      throw std::runtime_error("csv row " + std::to_string(raw.size()) + " has wrong arity");
  }
  // column kinds are not stored in csv: integral in every row -> integer,
  // parseable as a real -> real, otherwise text
  for (std::size_t c = 0; c < header.size(); ++c) {
    ColumnKind kind = ColumnKind::integer;
    for (const auto& row : raw) {
      if (looks_integral(row[c])) continue;
      try {
        parse_double(row[c]);
        kind = ColumnKind::real;
      } catch (const std::runtime_error&) {
        kind = ColumnKind::text;
        break;
      }
    }
    if (raw.empty()) kind = ColumnKind::real;
    table.columns.push_back({header[c], kind});
  }
  for (const auto& row : raw) {
    std::vector<Cell> cells;
    for (std::size_t c = 0; c < row.size(); ++c)
      cells.push_back(parse_token(row[c], table.columns[c].kind));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

Table parse_json(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad json: ") + e.what());
  }
  Table table;
  try {
    for (const auto& [key, value] : doc.at("meta").items())
      table.meta.emplace_back(key, value.get<double>());
    for (const auto& column : doc.at("columns"))
      table.columns.push_back(
          {column.at("name").get<std::string>(), kind_from_name(column.at("type").get<std::string>())});
    for (const auto& row : doc.at("rows")) {
      std::vector<Cell> cells;
      for (const auto& column : table.columns) {
        const auto& value = row.at(column.name);
        switch (column.kind) {
          case ColumnKind::integer: cells.emplace_back(value.get<std::int64_t>()); break;
          case ColumnKind::real: cells.emplace_back(value.get<double>()); break;
          case ColumnKind::text: cells.emplace_back(value.get<std::string>()); break;
        }
      }
      table.rows.push_back(std::move(cells));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad table json: ") + e.what());
  }
  return table;
}

Table parse(std::string_view text, Format format) {
  return format == Format::csv ? parse_csv(text) : parse_json(text);
}

}  // namespace trispin
