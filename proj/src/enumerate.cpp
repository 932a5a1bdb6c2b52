#include "wrlat/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace wrlat {

namespace {

// Depth-first Fincke-Pohst enumeration on an LLL-reduced Gram matrix.
// With Q = tR·R (R upper triangular) the quadratic form reads
//   sum_i r_ii^2 (x_i + sum_{j>i} (r_ij / r_ii) x_j)^2,
// so coordinates are fixed from the last one down to the first.
class Enumerator {
 public:
  Enumerator(const Matrix& r, double radius_sq, std::size_t cap)
      : n_(static_cast<int>(r.rows())), r_(r), radius_sq_(radius_sq), cap_(cap), x_(n_) {
    x_.setZero();
  }

  std::vector<IntVector> run() {
    recurse(n_ - 1, 0.0);
    return std::move(found_);
  }

 private:
  void recurse(int level, double partial) {
    double center = 0.0;
    for (int j = level + 1; j < n_; ++j) center -= r_(level, j) * static_cast<double>(x_(j));
    center /= r_(level, level);
    const double rii_sq = r_(level, level) * r_(level, level);
    const double remaining = std::max(0.0, radius_sq_ - partial);
    // Relative slack keeps boundary points that rounding would drop.
    const double half_width = std::sqrt(remaining / rii_sq) * (1.0 + 1e-9) + 1e-12;
    const auto lo = static_cast<std::int64_t>(std::ceil(center - half_width));
    const auto hi = static_cast<std::int64_t>(std::floor(center + half_width));
    for (std::int64_t xi = lo; xi <= hi; ++xi) {
      x_(level) = xi;
      const double d = static_cast<double>(xi) - center;
      const double next = partial + rii_sq * d * d;
      if (next > radius_sq_ * (1.0 + 1e-9) + 1e-300) continue;
      if (level == 0) {
        if (!x_.isZero()) {
          found_.push_back(x_);
          if (found_.size() > 2 * cap_) throw CapacityError("short vector enumeration exceeded the cap");
        }
      } else {
        recurse(level - 1, next);
      }
    }
    x_(level) = 0;
  }

  int n_;
  const Matrix& r_;
  double radius_sq_;
  std::size_t cap_;
  IntVector x_;
  std::vector<IntVector> found_;
};

}  // namespace

std::vector<IntVector> enumerate_short_vectors(const GramMatrix& q, double radius_sq, double band,
                                               std::size_t cap) {
  if (!(radius_sq > 0.0)) throw PreconditionError("enumeration radius must be positive");
  const LllResult red = lll_reduce(q);
  Eigen::LLT<Matrix> llt(red.gram.matrix());
  if (llt.info() != Eigen::Success) throw NumericalError("Cholesky factorization failed after LLL");
  const Matrix r = llt.matrixU();

  const double limit = radius_sq * (1.0 + band);
  Enumerator e(r, limit, cap);
  std::vector<IntVector> out;
  for (const auto& y : e.run()) {
    IntVector v = red.transform * y;
    if (sign_normalize(v) != v) continue;
    if (q.norm_sq(v) <= limit) out.push_back(std::move(v));
  }
  if (out.size() > cap) throw CapacityError("short vector enumeration exceeded the cap");
  std::sort(out.begin(), out.end(), vector_order);
  return out;
}

}  // namespace wrlat
