#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fbstairs::io {

enum class Format { csv, json };

/// Parse "csv" / "json" (std::invalid_argument otherwise).
Format parse_format(const std::string& s);

/// One emitted table.
///
/// The preamble carries the run's semantic configuration — model identity and
/// solver parameters — and nothing environmental (no timestamps, hosts,
/// worker counts, or cache statistics), so identical configurations render
/// identical bytes. Row fields are pre-rendered strings; the CSV and JSON
/// renderings carry exactly the same field text. Fields must not contain
/// commas, newlines, or double quotes.
struct Table {
  std::string name;
  std::vector<std::pair<std::string, std::string>> preamble;  // key, value
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Fixed scientific notation with 15 significant digits (printf %.14e):
/// round-trips every double and keeps a stable width, so emitted tables can
/// be compared byte for byte.
std::string format_double(double v);
std::string format_long(long v);

/// '#'-prefixed "key=value" preamble lines, a header row, then the data rows,
/// comma-separated.
std::string csv_text(const Table& t);

/// JSON mirror of the same table: {"name", "config", "columns", "rows"} with
/// config keys in preamble order and every row field the same string the CSV
/// carries.
std::string json_text(const Table& t);

std::string render(const Table& t, Format f);

/// Write text to a file, or to stdout when path is empty or "-". Throws
/// std::invalid_argument when the file cannot be opened.
void write_text(const std::string& text, const std::string& path);

}  // namespace fbstairs::io
