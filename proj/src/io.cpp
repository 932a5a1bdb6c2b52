#include "wrlat/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wrlat {

using nlohmann::json;

namespace {

Matrix matrix_from_json(const json& rows, int n, const char* what) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw InputError(std::string(what) + " must have n rows");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw InputError(std::string(what) + " rows must have n entries");
    for (int j = 0; j < n; ++j) {
      if (!row[j].is_number()) throw InputError(std::string(what) + " entries must be numbers");
      m(i, j) = row[j].get<double>();
    }
  }
  if (!m.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
  return m;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InputError("cannot parse number '" + std::string(s) + "'");
  return v;
}

UpperHalfPoint parse_tau(std::string_view tok) {
  while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
  while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
  if (tok.size() < 2 || tok.back() != 'i') throw InputError("expected a point of the form x+yi");
  tok.remove_suffix(1);
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = tok.size(); k-- > 1;) {
    if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) throw InputError("expected a point of the form x+yi");
  const double x = parse_double(tok.substr(0, split));
  const std::string_view im = tok.substr(split);
  const double y = (im == "+" || im == "-") ? (im == "+" ? 1.0 : -1.0) : parse_double(im);
  if (!(y > 0.0)) throw InputError("imaginary part must be positive");
  return {x, y};
}

}  // namespace

GramMatrix LatticeFile::to_gram() const {
  if (gram) return GramMatrix(*gram);
  if (std::abs(basis->determinant()) < 1e-300) throw InputError("basis is singular");
  return gram_of(BasisMatrix(*basis));
}

LatticeFile parse_lattice(const json& j) {
  if (!j.is_object()) throw InputError("lattice file must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw InputError("lattice file needs an integer \"n\"");
  LatticeFile f;
  f.n = j["n"].get<int>();
  if (f.n < 1) throw InputError("\"n\" must be positive");
  const bool has_basis = j.contains("basis");
  const bool has_gram = j.contains("gram");
  if (has_basis == has_gram) throw InputError("lattice file needs exactly one of \"basis\" or \"gram\"");
  if (has_basis) f.basis = matrix_from_json(j["basis"], f.n, "basis");
  if (has_gram) {
    f.gram = matrix_from_json(j["gram"], f.n, "gram");
    if ((*f.gram - f.gram->transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + f.gram->cwiseAbs().maxCoeff()))
      throw InputError("gram must be symmetric");
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw InputError("\"label\" must be a string");
    f.label = j["label"].get<std::string>();
  }
  try {
    (void)f.to_gram();
  } catch (const NotPositiveDefiniteError&) {
    throw InputError("gram is not positive definite");
  }
  return f;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const IntVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json lattice_to_json(const LatticeFile& f) {
  json j;
  j["n"] = f.n;
  if (f.basis) j["basis"] = matrix_to_json(*f.basis);
  if (f.gram) j["gram"] = matrix_to_json(*f.gram);
  if (!f.label.empty()) j["label"] = f.label;
  return j;
}

LatticeFile read_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_lattice(j);
}

void write_lattice_file(const std::string& path, const LatticeFile& f) {
  write_text(path, lattice_to_json(f).dump(2) + "\n");
}

json trace_to_json(const RetractionTrace& trace) {
  json j;
  j["n"] = trace.start.dim();
  j["start"] = matrix_to_json(trace.start.matrix());
  json events = json::array();
  for (std::size_t e = 0; e < trace.events.size(); ++e) {
    const FlowEvent& ev = trace.events[e];
    json je;
    je["t_star"] = ev.t_star;
    json nv = json::array();
    for (const auto& v : ev.new_vectors) nv.push_back(vector_to_json(v));
    je["new_vectors"] = std::move(nv);
    je["stratum_before"] = ev.stratum_before;
    je["stratum_after"] = ev.stratum_after;
    je["gram_after"] = matrix_to_json(trace.checkpoints[e].matrix());
    events.push_back(std::move(je));
  }
  j["events"] = std::move(events);
  j["final"] = matrix_to_json(trace.final_gram.matrix());
  return j;
}

std::vector<UpperHalfPoint> parse_taus(const std::string& text) {
  std::vector<UpperHalfPoint> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_tau(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::string scan_csv(const std::vector<ScanPoint>& points) {
  std::string out = "re,im,systole_sq,stratum\n";
  for (const auto& p : points)
    out += format_double(p.re) + ',' + format_double(p.im) + ',' + format_double(p.systole_sq) + ',' +
           std::to_string(p.stratum) + '\n';
  return out;
}

void write_text(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
  if (!out) throw InputError("cannot write " + path);
}

void write_pgm(const std::string& path, const GridSpec& grid, const std::vector<ScanPoint>& points) {
  if (points.size() != static_cast<std::size_t>(grid.width) * grid.height)
    throw Error("heatmap size does not match the grid");
  std::ostringstream os;
  os << "P5\n" << grid.width << ' ' << grid.height << "\n4\n";
  for (int row = grid.height - 1; row >= 0; --row)
    for (int col = 0; col < grid.width; ++col)
      os.put(static_cast<char>(points[static_cast<std::size_t>(row) * grid.width + col].stratum));
  write_text(path, os.str());
}

}  // namespace wrlat
