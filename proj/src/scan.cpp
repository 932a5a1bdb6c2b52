#include "wrlat/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>

namespace wrlat {

double GridSpec::step() const {
  const double dx = (re_max - re_min) / (width - 1);
  double dy = (im_max - im_min) / (height - 1);
  if (kind == GridKind::FundamentalDomain) dy = (im_max - std::sqrt(0.75)) / (height - 1);
  return std::hypot(dx, dy);
}

bool ScanReport::ok() const {
  return std::all_of(flags.begin(), flags.end(), [](const ScanFlag& f) { return f.ok; });
}

std::vector<UpperHalfPoint> grid_points(const GridSpec& grid) {
  if (grid.width < 2 || grid.height < 2) throw PreconditionError("scan grid needs at least 2 steps per axis");
  if (!(grid.re_max > grid.re_min) || !(grid.im_max > grid.im_min) || !(grid.im_min > 0.0))
    throw PreconditionError("scan region must be a nonempty box in the upper half plane");

  std::vector<UpperHalfPoint> pts;
  pts.reserve(static_cast<std::size_t>(grid.width) * grid.height);
  const double dx = (grid.re_max - grid.re_min) / (grid.width - 1);
  const double dy = (grid.im_max - grid.im_min) / (grid.height - 1);
  auto re_at = [&](int i) { return i == grid.width - 1 ? grid.re_max : grid.re_min + i * dx; };

  switch (grid.kind) {
    case GridKind::Rectangular:
      for (int j = 0; j < grid.height; ++j)
        for (int i = 0; i < grid.width; ++i)
          pts.push_back({re_at(i), j == grid.height - 1 ? grid.im_max : grid.im_min + j * dy});
      break;
    case GridKind::AnchoredAtHexagonal: {
      const double y0 = hexagonal_point().y;
      const double j0 = std::round((y0 - grid.im_min) / dy);
      for (int j = 0; j < grid.height; ++j) {
        const double y = y0 + (j - j0) * dy;
        if (!(y > 0.0)) throw PreconditionError("anchored grid leaves the upper half plane");
        for (int i = 0; i < grid.width; ++i) pts.push_back({re_at(i), y});
      }
      break;
    }
    case GridKind::FundamentalDomain:
      for (int j = 0; j < grid.height; ++j)
        for (int i = 0; i < grid.width; ++i) {
          const double x = re_at(i);
          const double floor_y = std::sqrt(std::max(0.0, 1.0 - x * x));
          const double y = j == grid.height - 1 ? grid.im_max
                                                : floor_y + j * (grid.im_max - floor_y) / (grid.height - 1);
          pts.push_back({x, y});
        }
      break;
  }
  return pts;
}

ScanPoint evaluate_point(const UpperHalfPoint& tau, ScanTarget target) {
  GramMatrix q = gram_of(tau_to_basis(tau));
  if (target == ScanTarget::ProductWithHexagonal) {
    const std::array<UpperHalfPoint, 2> taus{tau, hexagonal_point()};
    q = product_embed(taus).gram();
  }
  const MinimalVectorSet m = systole_data(q);
  return {tau.x, tau.y, m.systole_sq, span_rank(m).value};
}

std::vector<ScanPoint> scan_grid(const GridSpec& grid, ScanTarget target, Execution exec) {
  const auto pts = grid_points(grid);
  std::vector<ScanPoint> out(pts.size());
  const auto count = static_cast<std::int64_t>(pts.size());

  if (exec == Execution::Serial) {
    for (std::int64_t i = 0; i < count; ++i) out[i] = evaluate_point(pts[i], target);
    return out;
  }

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[i] = evaluate_point(pts[i], target);
    } catch (...) {
#pragma omp critical(wrlat_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void set_scan_workers(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
}

}  // namespace wrlat
