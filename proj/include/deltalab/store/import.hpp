#pragma once

#include "deltalab/fields/number_field.hpp"
#include "deltalab/poly/factor.hpp"
#include "deltalab/store/csv.hpp"

#include <istream>
#include <string>
#include <vector>

namespace deltalab {

enum class ImportStatus { Match, Mismatch, Malformed };

inline const char *to_string(ImportStatus s) {
  switch (s) {
  case ImportStatus::Match: return "match";
  case ImportStatus::Mismatch: return "mismatch";
  case ImportStatus::Malformed: return "malformed";
  }
  return "?";
}

struct ImportRow {
  size_t line = 0;
  ImportStatus status = ImportStatus::Malformed;
  std::string poly;
  std::string claimed;
  std::string computed;
  std::string message;
};

/// Reconciles a table of (degree, coeffs, discriminant) rows against the
/// computed field discriminant. Coefficients are ';'-separated, constant
/// first. A header row is recognized by a non-numeric first cell.
inline std::vector<ImportRow> import_table(std::istream &in) {
  std::vector<ImportRow> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = csv_split(line);
    for (auto &c : cells) {
      auto a = c.find_first_not_of(" \t"), b = c.find_last_not_of(" \t");
      c = a == std::string::npos ? "" : c.substr(a, b - a + 1);
    }
    if (lineno == 1 && !cells.empty() && cells[0] == "degree") continue;
    ImportRow row;
    row.line = lineno;
    try {
      if (cells.size() != 3) throw std::invalid_argument("expected 3 columns, found " + std::to_string(cells.size()));
      BigInt dz = parse_integer(cells[0]);
      if (!dz.fits_slong_p()) throw std::invalid_argument("degree out of range");
      long degree = dz.get_si();
      std::vector<BigInt> coeffs;
      size_t pos = 0;
      while (true) {
        size_t semi = cells[1].find(';', pos);
        coeffs.push_back(parse_integer(cells[1].substr(pos, semi == std::string::npos ? std::string::npos : semi - pos)));
        if (semi == std::string::npos) break;
        pos = semi + 1;
      }
      IntPolynomial f(coeffs);
      row.poly = f.to_string();
      row.claimed = parse_integer(cells[2]).get_str();
      if (f.degree() != degree)
        throw std::invalid_argument("polynomial has degree " + std::to_string(f.degree()) + ", row claims " + cells[0]);
      if (degree < 1 || !is_irreducible(f)) throw std::invalid_argument("polynomial is not irreducible");
      NumberField K = NumberField::from_poly(f);
      row.computed = K.discriminant.get_str();
      row.status = row.computed == row.claimed ? ImportStatus::Match : ImportStatus::Mismatch;
    } catch (const std::exception &e) {
      row.status = ImportStatus::Malformed;
      row.message = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

} // namespace deltalab
