#include "wrlat/random.hpp"

#include <cmath>

namespace wrlat {

IntMatrix random_unimodular(SplitMix64& rng, int n, std::int64_t bound, int moves) {
  if (moves <= 0) moves = 4 * n;
  IntMatrix u = IntMatrix::Identity(n, n);
  if (n == 1) {
    if (rng() & 1) u(0, 0) = -1;
    return u;
  }
  for (int done = 0, attempts = 0; done < moves && attempts < 100 * moves; ++attempts) {
    const auto i = static_cast<int>(rng.integer(0, n - 1));
    auto j = static_cast<int>(rng.integer(0, n - 2));
    if (j >= i) ++j;
    IntMatrix next = u;
    switch (rng.integer(0, 3)) {
      case 0:
      case 1:
        next.row(i) += (rng() & 1 ? 1 : -1) * u.row(j);
        break;
      case 2:
        next.row(i).swap(next.row(j));
        break;
      default:
        next.row(i) = -next.row(i);
        break;
    }
    if (next.cwiseAbs().maxCoeff() > bound) continue;
    u = next;
    ++done;
  }
  return u;
}

GramMatrix random_diagonal_gram(SplitMix64& rng, int n, double lo, double hi) {
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = rng.uniform(lo, hi);
  return GramMatrix(d.asDiagonal().toDenseMatrix());
}

GramMatrix random_gram(SplitMix64& rng, int n) {
  while (true) {
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
    b += 0.5 * Matrix::Identity(n, n);
    if (std::abs(b.determinant()) < 0.05) continue;
    return normalize_gram(GramMatrix(b.transpose() * b));
  }
}

Matrix random_symplectic_basis(SplitMix64& rng, int g, int factors) {
  const int n = 2 * g;
  const Matrix j = standard_J(g).j.cast<double>();
  Matrix a = Matrix::Identity(n, n);
  for (int f = 0; f < factors; ++f) {
    Matrix step = Matrix::Identity(n, n);
    if (rng() & 1) {
      // SL(2, R) element on one coordinate pair.
      const auto k = static_cast<int>(rng.integer(0, g - 1));
      const double p = rng.uniform(0.6, 1.6), q = rng.uniform(-0.8, 0.8), r = rng.uniform(-0.8, 0.8);
      Matrix m(2, 2);
      m << p, q, r, (1.0 + q * r) / p;
      step.block(2 * k, 2 * k, 2, 2) = m;
    } else {
      Vector v(n);
      for (int i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
      step += rng.uniform(-0.7, 0.7) * v * v.transpose() * j;
    }
    a = a * step;
  }
  return a;
}

UpperHalfPoint random_fundamental_point(SplitMix64& rng, double im_max) {
  const double x = rng.uniform(-0.5, 0.5);
  const double floor_y = std::sqrt(1.0 - x * x);
  return {x, rng.uniform(floor_y, im_max)};
}

}  // namespace wrlat
