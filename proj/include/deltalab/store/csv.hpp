#pragma once

#include "deltalab/arith/mpfr.hpp"
#include "deltalab/store/hash.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace deltalab {

inline std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Report table with a "# key: value" header block. The input hash is the
/// git blob id of the config lines, so equal configs give equal hashes.
struct CsvReport {
  std::string title;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> conventions;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string input_hash() const {
    std::string text;
    for (const auto &[k, v] : config) text += k + "=" + v + "\n";
    return git_blob_sha1(text);
  }

  void write(std::ostream &out) const {
    out << "# " << title << "\n";
    for (const auto &[k, v] : config) out << "# config." << k << ": " << v << "\n";
    for (const auto &[k, v] : conventions) out << "# convention." << k << ": " << v << "\n";
    out << "# precision_cap_bits: " << precision_cap() << "\n";
    out << "# input_sha1: " << input_hash() << "\n";
    for (size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_field(columns[i]);
    out << "\n";
    for (const auto &row : rows) {
      for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
      out << "\n";
    }
  }
};

/// Splits one CSV line, honoring double quotes.
inline std::vector<std::string> csv_split(const std::string &line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

} // namespace deltalab
