#include "wrlat/lattice.hpp"

#include <cmath>

namespace wrlat {

namespace {

// Gram-Schmidt data of a Gram matrix: mu(i, j) for j < i and the squared
// lengths bstar(i) of the orthogonalized vectors.
struct GramSchmidt {
  Matrix mu;
  Vector bstar;
};

GramSchmidt orthogonalize(const Matrix& g) {
  const int n = static_cast<int>(g.rows());
  GramSchmidt gs{Matrix::Zero(n, n), Vector::Zero(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      double r = g(i, j);
      for (int k = 0; k < j; ++k) r -= gs.mu(j, k) * gs.mu(i, k) * gs.bstar(k);
      gs.mu(i, j) = r / gs.bstar(j);
    }
    double b = g(i, i);
    for (int k = 0; k < i; ++k) b -= gs.mu(i, k) * gs.mu(i, k) * gs.bstar(k);
    gs.bstar(i) = b;
    gs.mu(i, i) = 1.0;
  }
  return gs;
}

}  // namespace

LllResult lll_reduce(const GramMatrix& q, double delta) {
  const int n = q.dim();
  Matrix g = q.matrix();
  IntMatrix u = IntMatrix::Identity(n, n);
  GramSchmidt gs = orthogonalize(g);

  // Column j of u holds the coordinates of the j-th reduced basis vector.
  auto add_multiple = [&](int k, int j, std::int64_t r) {
    // b_k <- b_k - r b_j
    u.col(k) -= r * u.col(j);
    const double rd = static_cast<double>(r);
    g.row(k) -= rd * g.row(j);
    g.col(k) -= rd * g.col(j);
  };

  std::size_t iterations = 0;
  int k = 1;
  while (k < n) {
    if (++iterations > 1'000'000) throw NumericalError("LLL did not terminate");
    bool reduced = false;
    for (int j = k - 1; j >= 0; --j) {
      const double m = gs.mu(k, j);
      if (std::abs(m) > 0.5) {
        const auto r = static_cast<std::int64_t>(std::llround(m));
        add_multiple(k, j, r);
        for (int l = 0; l < j; ++l) gs.mu(k, l) -= static_cast<double>(r) * gs.mu(j, l);
        gs.mu(k, j) -= static_cast<double>(r);
        reduced = true;
      }
    }
    // Large multipliers lose precision in the incremental update.
    if (reduced) gs = orthogonalize(g);
    if (gs.bstar(k) >= (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.bstar(k - 1)) {
      ++k;
    } else {
      u.col(k).swap(u.col(k - 1));
      g.row(k).swap(g.row(k - 1));
      g.col(k).swap(g.col(k - 1));
      gs = orthogonalize(g);
      k = std::max(k - 1, 1);
    }
  }
  // Recompute from the transform so the returned Gram is exactly tU·Q·U.
  return {q.transformed(u), u};
}

}  // namespace wrlat
