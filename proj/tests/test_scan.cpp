#include "wrlat/scan.hpp"

#include <doctest.h>

#include <cmath>

using namespace wrlat;

namespace {

GridSpec grid(GridKind kind, int w, int h) {
  GridSpec g;
  g.kind = kind;
  g.width = w;
  g.height = h;
  return g;
}

bool same_points(const std::vector<ScanPoint>& a, const std::vector<ScanPoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].re != b[i].re || a[i].im != b[i].im || a[i].systole_sq != b[i].systole_sq ||
        a[i].stratum != b[i].stratum)
      return false;
  return true;
}

}  // namespace

TEST_CASE("grid_points shapes") {
  const auto rect = grid_points(grid(GridKind::Rectangular, 5, 3));
  REQUIRE(rect.size() == 15);
  CHECK(rect.front().x == -0.5);
  CHECK(rect.back().x == 0.5);
  CHECK(rect.back().y == 2.0);
  // Imaginary part is the outer index.
  CHECK(rect[1].y == rect[0].y);
  CHECK(rect[5].y > rect[4].y);

  const auto fd = grid_points(grid(GridKind::FundamentalDomain, 11, 6));
  REQUIRE(fd.size() == 66);
  for (const auto& p : fd) {
    CHECK(std::abs(p.x) <= 0.5);
    CHECK(p.x * p.x + p.y * p.y >= 1.0 - 1e-12);
    CHECK(p.y <= 2.0);
  }

  const GridSpec a = grid(GridKind::AnchoredAtHexagonal, 21, 13);
  bool has_hex = false;
  for (const auto& p : grid_points(a)) has_hex = has_hex || (p.x == 0.5 && std::abs(p.y - std::sqrt(0.75)) < 1e-15);
  CHECK(has_hex);
}

TEST_CASE("grid step") {
  const GridSpec g = grid(GridKind::Rectangular, 11, 6);
  CHECK(g.step() == doctest::Approx(std::hypot(0.1, (2.0 - g.im_min) / 5)));
}

TEST_CASE("degenerate grids are rejected") {
  CHECK_THROWS_AS(grid_points(grid(GridKind::Rectangular, 1, 5)), PreconditionError);
  CHECK_THROWS_AS(grid_points(grid(GridKind::Rectangular, 5, 1)), PreconditionError);
  GridSpec empty = grid(GridKind::Rectangular, 3, 3);
  empty.re_max = empty.re_min;
  CHECK_THROWS_AS(grid_points(empty), PreconditionError);
  GridSpec below = grid(GridKind::Rectangular, 3, 3);
  below.im_min = -1.0;
  CHECK_THROWS_AS(grid_points(below), PreconditionError);
}

TEST_CASE("evaluate_point") {
  const ScanPoint hex = evaluate_point(hexagonal_point(), ScanTarget::SingleFactor);
  CHECK(hex.stratum == 2);
  CHECK(hex.systole_sq == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
  const ScanPoint i = evaluate_point({0.0, 1.0}, ScanTarget::SingleFactor);
  CHECK(i.stratum == 2);
  CHECK(i.systole_sq == doctest::Approx(1.0));
  CHECK(evaluate_point({0.1, 1.7}, ScanTarget::SingleFactor).stratum == 1);
}

TEST_CASE("parallel scan equals the serial reference") {
  for (auto kind : {GridKind::Rectangular, GridKind::AnchoredAtHexagonal, GridKind::FundamentalDomain})
    for (auto target : {ScanTarget::SingleFactor, ScanTarget::ProductWithHexagonal}) {
      const GridSpec g = grid(kind, 23, 17);
      const auto serial = scan_grid(g, target, Execution::Serial);
      CHECK(serial.size() == 23u * 17u);
      for (int workers : {1, 2, 4}) {
        set_scan_workers(workers);
        CHECK(same_points(serial, scan_grid(g, target, Execution::Parallel)));
      }
      set_scan_workers(0);
    }
}

TEST_CASE("single-factor systoles stay below the hexagonal value") {
  const auto pts = scan_grid(grid(GridKind::FundamentalDomain, 41, 21), ScanTarget::SingleFactor);
  const double hex = 2.0 / std::sqrt(3.0);
  for (const auto& p : pts) CHECK(p.systole_sq <= hex + 1e-9);
}
