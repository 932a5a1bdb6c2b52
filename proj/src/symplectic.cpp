#include "wrlat/symplectic.hpp"

#include <cmath>

namespace wrlat {

SiegelPoint::SiegelPoint(Matrix a, double tol) : a_(std::move(a)) {
  if (!is_symplectic(a_, tol)) throw PreconditionError("basis is not symplectic");
}

SymplecticForm standard_J(int g) {
  if (g < 1) throw PreconditionError("genus must be at least 1");
  IntMatrix j = IntMatrix::Zero(2 * g, 2 * g);
  for (int k = 0; k < g; ++k) {
    j(2 * k, 2 * k + 1) = -1;
    j(2 * k + 1, 2 * k) = 1;
  }
  return {g, j};
}

bool is_symplectic(const Matrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() % 2 != 0 || a.rows() == 0)
    throw PreconditionError("symplectic test needs a square matrix of even size");
  const Matrix j = standard_J(static_cast<int>(a.rows()) / 2).j.cast<double>();
  return (a.transpose() * j * a - j).cwiseAbs().maxCoeff() <= tol;
}

BasisMatrix tau_to_basis(const UpperHalfPoint& tau) {
  if (!(tau.y > 0.0)) throw PreconditionError("imaginary part must be positive");
  Matrix b(2, 2);
  b << 1.0, tau.x, 0.0, tau.y;
  return BasisMatrix(b / std::sqrt(tau.y));
}

UpperHalfPoint hexagonal_point() { return {0.5, std::sqrt(3.0) / 2.0}; }

Int2x2 hexagonal_rotation() {
  Int2x2 a;
  a << 1, -1, 1, 0;
  return a;
}

UpperHalfPoint mobius(const Int2x2& m, const UpperHalfPoint& tau) {
  const std::complex<double> z = tau.as_complex();
  const std::complex<double> w = (static_cast<double>(m(0, 0)) * z + static_cast<double>(m(0, 1))) /
                                 (static_cast<double>(m(1, 0)) * z + static_cast<double>(m(1, 1)));
  return {w.real(), w.imag()};
}

Int2x2 mobius_to_inner(const Int2x2& m) {
  Int2x2 u;
  u << m(1, 1), m(0, 1), m(1, 0), m(0, 0);
  return u;
}

SiegelPoint product_embed(std::span<const UpperHalfPoint> taus) {
  if (taus.empty()) throw PreconditionError("product_embed needs at least one point");
  const auto g = static_cast<Eigen::Index>(taus.size());
  Matrix a = Matrix::Zero(2 * g, 2 * g);
  for (Eigen::Index k = 0; k < g; ++k) a.block(2 * k, 2 * k, 2, 2) = tau_to_basis(taus[k]).matrix();
  return SiegelPoint(std::move(a));
}

IntMatrix restricted_form(const MinimalVectorSet& m, const SymplecticForm& j) {
  const auto picked = independent_subset(m.vectors);
  IntMatrix basis(j.j.rows(), static_cast<Eigen::Index>(picked.size()));
  for (std::size_t c = 0; c < picked.size(); ++c) {
    if (m.vectors[picked[c]].size() != j.j.rows()) throw PreconditionError("vector size does not match the form");
    basis.col(static_cast<Eigen::Index>(c)) = m.vectors[picked[c]];
  }
  return basis.transpose() * j.j * basis;
}

bool in_bavard_set(const SiegelPoint& p) {
  const IntMatrix form = restricted_form(systole_data(p.gram()), standard_J(p.genus()));
  return !form.isZero();
}

bool siegel_gram_identity_check(const GramMatrix& q, const SymplecticForm& j, double tol) {
  if (q.dim() != j.j.rows()) throw PreconditionError("Gram size does not match the form");
  const Matrix jr = j.j.cast<double>();
  return (q.matrix() * jr * q.matrix() - jr).cwiseAbs().maxCoeff() <= tol;
}

GramMatrix hexagonal_gram() { return gram_of(tau_to_basis(hexagonal_point())); }

}  // namespace wrlat
