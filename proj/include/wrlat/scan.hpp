#pragma once

// Grid scans over the upper half plane. Every grid point is evaluated
// independently, so the scan kernel has an OpenMP-parallel version and a
// serial reference kept for testing and benchmarking. Both return points in
// grid order (row-major, imaginary part outermost).

#include "wrlat/symplectic.hpp"

#include <string>

namespace wrlat {

enum class GridKind {
  // re_i = re_min + i·(re_max - re_min)/(width - 1), likewise for im.
  Rectangular,
  // Same as Rectangular, but the imaginary axis is shifted by less than half
  // a step so that Im τ₀ = √3/2 is a grid row.
  AnchoredAtHexagonal,
  // Columns over |Re τ| <= 1/2; each column runs from the unit circle
  // sqrt(1 - x²) up to im_max.
  FundamentalDomain,
};

struct GridSpec {
  GridKind kind = GridKind::Rectangular;
  double re_min = -0.5;
  double re_max = 0.5;
  double im_min = 0.9 * 0.86602540378443864676;
  double im_max = 2.0;
  int width = 2;
  int height = 2;

  /// Largest distance between neighbouring grid points.
  double step() const;
};

enum class ScanTarget {
  // stratum and systole of gram_of(product_embed(τ, τ₀)) in R^4.
  ProductWithHexagonal,
  // stratum and systole of the covolume-1 lattice of τ in R^2.
  SingleFactor,
};

enum class Execution { Serial, Parallel };

struct ScanPoint {
  double re = 0.0;
  double im = 0.0;
  double systole_sq = 0.0;
  int stratum = 0;
};

struct ScanHit {
  std::string id;
  UpperHalfPoint tau;
  UpperHalfPoint reduced;
  int stratum = 0;
  double systole_sq = 0.0;
};

struct ScanFlag {
  std::string name;
  bool ok = false;
};

struct ScanReport {
  GridSpec grid;
  std::vector<ScanPoint> points;
  std::vector<ScanHit> hits;
  std::vector<ScanFlag> flags;

  bool ok() const;
};

/// Grid points in scan order. Throws PreconditionError for fewer than two
/// steps per axis or an empty region.
std::vector<UpperHalfPoint> grid_points(const GridSpec& grid);

std::vector<ScanPoint> scan_grid(const GridSpec& grid, ScanTarget target, Execution exec = Execution::Parallel);

ScanPoint evaluate_point(const UpperHalfPoint& tau, ScanTarget target);

/// Number of OpenMP workers used by parallel scans (0 leaves the default).
void set_scan_workers(int workers);

}  // namespace wrlat
