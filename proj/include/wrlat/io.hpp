#pragma once

// File formats.
//
// LatticeFile (JSON):
//   {"n": 2, "gram": [[1, 0.5], [0.5, 1]], "label": "hexagonal"}
// with exactly one of "basis" (rows of the basis matrix, basis vectors are
// columns) or "gram". Doubles are written in shortest round-trip form.
//
// Trace (JSON): start, events [{t_star, new_vectors, stratum_before,
// stratum_after, gram_after}], final.
//
// Scan (CSV): header `re,im,systole_sq,stratum`, one row per grid point in
// scan order, doubles with 17 significant digits.
//
// Heatmap (PGM): binary P5, width × height, maxval 4, one byte per point
// holding the stratum; the top row is the largest imaginary part.

#include "wrlat/retraction.hpp"
#include "wrlat/scan.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace wrlat {

struct InputError : Error {
  using Error::Error;
};

struct LatticeFile {
  int n = 0;
  std::optional<Matrix> basis;
  std::optional<Matrix> gram;
  std::string label;

  /// Gram matrix of the lattice (tB·B when a basis is given).
  GramMatrix to_gram() const;
};

LatticeFile parse_lattice(const nlohmann::json& j);
nlohmann::json lattice_to_json(const LatticeFile& f);
LatticeFile read_lattice_file(const std::string& path);
void write_lattice_file(const std::string& path, const LatticeFile& f);

nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json vector_to_json(const IntVector& v);
nlohmann::json trace_to_json(const RetractionTrace& trace);

/// Parses "x+yi" tokens separated by commas, e.g. "0.5+0.8660254i, 0+2i".
std::vector<UpperHalfPoint> parse_taus(const std::string& text);

std::string scan_csv(const std::vector<ScanPoint>& points);
void write_text(const std::string& path, const std::string& contents);
void write_pgm(const std::string& path, const GridSpec& grid, const std::vector<ScanPoint>& points);

}  // namespace wrlat
