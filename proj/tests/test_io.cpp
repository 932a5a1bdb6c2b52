#include "wrlat/io.hpp"
#include "wrlat/random.hpp"

#include <doctest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wrlat;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wrlat_test_io_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool bit_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a.data()[i]) != std::bit_cast<std::uint64_t>(b.data()[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("parse_lattice accepts basis or gram") {
  const LatticeFile g = parse_lattice(json::parse(R"({"n": 2, "gram": [[1, 0.5], [0.5, 1]], "label": "hex"})"));
  CHECK(g.n == 2);
  CHECK(g.label == "hex");
  CHECK_FALSE(g.basis.has_value());
  CHECK(g.to_gram().matrix()(0, 1) == 0.5);

  const LatticeFile b = parse_lattice(json::parse(R"({"n": 2, "basis": [[1, 1], [0, 2]]})"));
  // Basis vectors are columns: (1, 0) and (1, 2).
  Matrix expect(2, 2);
  expect << 1, 1, 1, 5;
  CHECK(b.to_gram().matrix() == expect);
}

TEST_CASE("parse_lattice rejects malformed input") {
  const char* bad[] = {
      R"([1, 2])",
      R"({"gram": [[1]]})",
      R"({"n": 0, "gram": []})",
      R"({"n": 2.5, "gram": [[1, 0], [0, 1]]})",
      R"({"n": 2})",
      R"({"n": 1, "gram": [[1]], "basis": [[1]]})",
      R"({"n": 2, "gram": [[1, 0]]})",
      R"({"n": 2, "gram": [[1, 0], [0]]})",
      R"({"n": 2, "gram": [[1, "a"], [0, 1]]})",
      R"({"n": 2, "gram": [[1, 0.3], [0.2, 1]]})",
      R"({"n": 2, "gram": [[1, 2], [2, 1]]})",
      R"({"n": 2, "gram": [[-1, 0], [0, 1]]})",
      R"({"n": 2, "basis": [[1, 2], [2, 4]]})",
      R"({"n": 1, "gram": [[1]], "label": 3})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_lattice(json::parse(text)), InputError);
  }

  const std::string path = temp_path("broken.json");
  write_text(path, "{\"n\": 2, ");
  CHECK_THROWS_AS(read_lattice_file(path), InputError);
  CHECK_THROWS_AS(read_lattice_file(temp_path("does_not_exist.json")), InputError);
  std::filesystem::remove(path);
}

TEST_CASE("lattice files round-trip bit-exactly") {
  SplitMix64 rng(123);
  const std::string path = temp_path("roundtrip.json");
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    LatticeFile f;
    f.n = n;
    f.label = "trial " + std::to_string(trial);
    if (trial % 2 == 0) {
      f.gram = random_gram(rng, n).matrix();
    } else {
      Matrix b(n, n);
      for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = rng.uniform(-10, 10) * std::pow(10.0, rng.integer(-8, 8));
      b += 1e9 * Matrix::Identity(n, n);
      f.basis = b;
    }
    write_lattice_file(path, f);
    const LatticeFile g = read_lattice_file(path);
    CHECK(g.n == n);
    CHECK(g.label == f.label);
    if (f.gram) CHECK(bit_equal(*g.gram, *f.gram));
    if (f.basis) CHECK(bit_equal(*g.basis, *f.basis));
  }
  std::filesystem::remove(path);
}

TEST_CASE("parse_taus") {
  const auto a = parse_taus("0.5+0.8660254037844386i, 0+2i");
  REQUIRE(a.size() == 2);
  CHECK(a[0].x == 0.5);
  CHECK(a[0].y == 0.8660254037844386);
  CHECK(a[1].x == 0.0);
  CHECK(a[1].y == 2.0);

  const auto b = parse_taus("-0.25+1e-1i,1.5e0+i");
  REQUIRE(b.size() == 2);
  CHECK(b[0].x == -0.25);
  CHECK(b[0].y == 0.1);
  CHECK(b[1].x == 1.5);
  CHECK(b[1].y == 1.0);
}

TEST_CASE("parse_taus errors") {
  for (const char* text : {"", "0.5", "2i", "0.5-1i", "0+0i", "a+bi", "0.5+1i,", "0.5+1j"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_taus(text), InputError);
  }
}

TEST_CASE("scan CSV") {
  GridSpec g;
  g.width = 3;
  g.height = 2;
  const auto pts = scan_grid(g, ScanTarget::SingleFactor, Execution::Serial);
  const std::string csv = scan_csv(pts);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "re,im,systole_sq,stratum");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string f;
    int cols = 0;
    while (std::getline(fields, f, ',')) ++cols;
    CHECK(cols == 4);
  }
  CHECK(rows == 6);
  // 17 significant digits survive a round trip.
  CHECK(csv.find("0.77942286340599476") != std::string::npos);
  CHECK(scan_csv(pts) == csv);
}

TEST_CASE("PGM heatmap") {
  GridSpec g;
  g.kind = GridKind::AnchoredAtHexagonal;
  g.re_min = 0.4;
  g.re_max = 0.6;
  g.im_min = 0.75;
  g.im_max = 1.0;
  g.width = 3;
  g.height = 3;
  const auto pts = scan_grid(g, ScanTarget::ProductWithHexagonal, Execution::Serial);
  const std::string path = temp_path("heat.pgm");
  write_pgm(path, g, pts);
  const std::string data = slurp(path);
  const std::string header = "P5\n3 3\n4\n";
  REQUIRE(data.size() == header.size() + 9);
  CHECK(data.substr(0, header.size()) == header);
  // Top row is the largest imaginary part; the centre byte is τ0.
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col)
      CHECK(static_cast<int>(data[header.size() + 3 * row + col]) == pts[3 * (2 - row) + col].stratum);
  CHECK(static_cast<int>(data[header.size() + 4]) == 4);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(write_pgm(path, g, {}), Error);
  CHECK_THROWS_AS(write_text("/nonexistent_dir/x.pgm", "x"), InputError);
}

TEST_CASE("trace JSON") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1.0, 1.0, 9.0;
  const RetractionTrace t = well_rounded_retract(GramMatrix(d));
  const json j = trace_to_json(t);
  CHECK(j["n"] == 3);
  REQUIRE(j["events"].size() == 1);
  const json& e = j["events"][0];
  CHECK(e["t_star"].get<double>() == doctest::Approx(std::log(9.0) / 6.0).epsilon(1e-12));
  CHECK(e["stratum_before"] == 2);
  CHECK(e["stratum_after"] == 3);
  CHECK(e["new_vectors"] == json::parse("[[0, 0, 1]]"));
  CHECK(e["gram_after"].size() == 3);
  CHECK(j["final"][2][2].get<double>() == doctest::Approx(std::cbrt(9.0)).epsilon(1e-12));
  CHECK(j["start"][2][2] == 9.0);
}
