#include "bpphase/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace bpphase::io {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::optional<double>& v) const {
      return v ? format_real(*v) : std::string{};
    }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
    }
    nlohmann::ordered_json operator()(const std::optional<double>& v) const {
      return v ? (*this)(*v) : nlohmann::ordered_json(nullptr);
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + name + "'");
}

std::string format_real(double value) {
  if (!std::isfinite(value)) return {};
  return fmt::format("{:.17g}", value);
}

void write_csv(std::ostream& out, const Document& doc) {
  if (doc.header) out << "# " << *doc.header << '\n';
  const auto& cols = doc.table.columns;
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << csv_escape(cols[c]);
  out << '\n';
  for (const auto& row : doc.table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << csv_escape(cell_text(row[c]));
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Document& doc) {
  nlohmann::ordered_json root;
  if (doc.header) root["header"] = *doc.header;
  root["config"] = doc.config;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : doc.table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[doc.table.columns[c]] = cell_json(row[c]);
    rows.push_back(std::move(obj));
  }
  root["rows"] = std::move(rows);
  root["summary"] = doc.summary;
  out << root.dump(2) << '\n';
}

void write_text(std::ostream& out, const Document& doc) {
  if (doc.header) out << "# " << *doc.header << '\n';
  const auto& cols = doc.table.columns;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
  for (const auto& row : doc.table.rows) {
    auto& texts = cells.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string text = cell_text(row[c]);
      if (std::holds_alternative<bool>(row[c])) text = std::get<bool>(row[c]) ? "yes" : "-";
      if (text.empty()) text = "-";
      width[c] = std::max(width[c], text.size());
      texts.push_back(std::move(text));
    }
  }
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t c = 0; c < fields.size(); ++c) {
      out << (c ? "  " : "") << fmt::format("{:>{}}", fields[c], width[c]);
    }
    out << '\n';
  };
  emit(cols);
  for (const auto& texts : cells) emit(texts);
  if (!doc.summary.empty()) {
    out << '\n';
    for (const auto& [key, value] : doc.summary.items()) {
      out << key << ": ";
      if (value.is_number_float()) {
        out << format_real(value.get<double>());
      } else if (value.is_string()) {
        out << value.get<std::string>();
      } else {
        out << value.dump();
      }
      out << '\n';
    }
  }
}

void write(std::ostream& out, const Document& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::table:
      write_text(out, doc);
      return;
    case OutputFormat::csv:
      write_csv(out, doc);
      return;
    case OutputFormat::json:
      write_json(out, doc);
      return;
  }
}

CsvData read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool at_line_start = true;
  bool comment = false;

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (at_line_start && records.empty() && c == '#') comment = true;
    at_line_start = false;
    if (comment) {
      if (c == '\n') {
        comment = false;
        at_line_start = true;
      }
      continue;
    }
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      at_line_start = true;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw std::runtime_error("read_csv: unterminated quoted field");
  if (!field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw std::runtime_error("read_csv: missing header row");

  CsvData data;
  data.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != data.header.size()) {
      throw std::runtime_error("read_csv: row " + std::to_string(r) + " has " +
                               std::to_string(records[r].size()) + " fields, header has " +
                               std::to_string(data.header.size()));
    }
    data.rows.push_back(std::move(records[r]));
  }
  return data;
}

}  // namespace bpphase::io
