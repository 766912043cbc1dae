#pragma once

// Tabular output shared by the CLI subcommands: RFC-4180 CSV with 17
// significant digits, JSON with shortest round-trip numbers, and an aligned
// plain-text table for terminals.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace bpphase::io {

enum class OutputFormat { table, csv, json };

/// Throws std::invalid_argument for an unknown name.
OutputFormat parse_format(const std::string& name);

using Cell = std::variant<long long, double, std::optional<double>, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// One run's worth of output.
struct Document {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  Table table;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  /// Only emitted when non-empty (the CLI's --header flag).
  std::optional<std::string> header;
};

/// "%.17g"; empty string for non-finite values.
std::string format_real(double value);

void write_csv(std::ostream& out, const Document& doc);
void write_json(std::ostream& out, const Document& doc);
void write_text(std::ostream& out, const Document& doc);
void write(std::ostream& out, const Document& doc, OutputFormat format);

/// Parsed CSV: header row plus string fields. Lines starting with '#'
/// before the header are skipped.
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Throws std::runtime_error on a malformed document.
CsvData read_csv(const std::string& text);

}  // namespace bpphase::io
