#include "fbstairs/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

namespace fbstairs::io {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void append_string_array(std::string& out, const std::vector<std::string>& xs) {
  out += '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ", ";
    out += '"';
    out += json_escape(xs[i]);
    out += '"';
  }
  out += ']';
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("format must be csv or json, got '" + s + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

std::string format_long(long v) { return std::to_string(v); }

std::string csv_text(const Table& t) {
  std::string out;
  for (const auto& [key, value] : t.preamble) {
    out += "# ";
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string json_text(const Table& t) {
  std::string out;
  out += "{\n  \"name\": \"";
  out += json_escape(t.name);
  out += "\",\n  \"config\": {";
  for (std::size_t i = 0; i < t.preamble.size(); ++i) {
    out += i > 0 ? ",\n    " : "\n    ";
    out += '"';
    out += json_escape(t.preamble[i].first);
    out += "\": \"";
    out += json_escape(t.preamble[i].second);
    out += '"';
  }
  out += t.preamble.empty() ? "},\n" : "\n  },\n";
  out += "  \"columns\": ";
  append_string_array(out, t.columns);
  out += ",\n  \"rows\": [";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    out += i > 0 ? ",\n    " : "\n    ";
    append_string_array(out, t.rows[i]);
  }
  out += t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string render(const Table& t, Format f) {
  return f == Format::csv ? csv_text(t) : json_text(t);
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << text;
  out.close();
  if (!out) throw std::invalid_argument("failed writing output file '" + path + "'");
}

}  // namespace fbstairs::io
