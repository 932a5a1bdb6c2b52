#pragma once

// Symplectic lattices. Coordinates are paired as (e_1, e_2), (e_3, e_4), ...
// so the symplectic form is block diagonal with blocks J_2 = [[0, -1], [1, 0]].
// A point of the Siegel space h_g is stored as a symplectic basis matrix A
// (tA·J·A = J); for g = 1 this is the upper half plane through
// τ ↦ lattice spanned by 1 and τ, rescaled to covolume 1.

#include "wrlat/lattice.hpp"

#include <complex>
#include <span>

namespace wrlat {

struct SymplecticForm {
  int genus = 0;
  IntMatrix j;
};

struct UpperHalfPoint {
  double x = 0.0;
  double y = 1.0;

  std::complex<double> as_complex() const { return {x, y}; }
};

class SiegelPoint {
 public:
  /// Throws PreconditionError unless A is symplectic within tol.
  explicit SiegelPoint(Matrix a, double tol = 1e-10);

  int genus() const { return static_cast<int>(a_.rows()) / 2; }
  const Matrix& basis() const { return a_; }
  GramMatrix gram() const { return GramMatrix(a_.transpose() * a_); }

 private:
  Matrix a_;
};

using Int2x2 = Eigen::Matrix<std::int64_t, 2, 2>;

SymplecticForm standard_J(int g);

/// max |tA·J·A - J| <= tol. Throws PreconditionError on odd or non-square input.
bool is_symplectic(const Matrix& a, double tol = 1e-10);

BasisMatrix tau_to_basis(const UpperHalfPoint& tau);

/// τ₀ = e^{iπ/3}; its lattice is the hexagonal lattice of maximal systole.
UpperHalfPoint hexagonal_point();

/// A₀ = [[1, -1], [1, 0]], acting by z ↦ 1 - 1/z with τ₀ as unique fixed point.
Int2x2 hexagonal_rotation();

/// Homography (aτ + b)/(cτ + d).
UpperHalfPoint mobius(const Int2x2& m, const UpperHalfPoint& tau);

/// Gram-level counterpart of a homography: U_M = [[d, b], [c, a]], so that
/// the Gram matrix of mobius(M, τ) is tU_M·Q_τ·U_M.
Int2x2 mobius_to_inner(const Int2x2& m);

/// Block-diagonal symplectic basis of orthogonal planes, one per τ.
SiegelPoint product_embed(std::span<const UpperHalfPoint> taus);

/// Matrix of ω on a basis of the span of M's vectors (basis taken greedily
/// from the list order).
IntMatrix restricted_form(const MinimalVectorSet& m, const SymplecticForm& j);

/// Membership in the set of symplectic lattices whose systoles span a
/// subspace that is not totally isotropic.
bool in_bavard_set(const SiegelPoint& p);

/// max |Q·J·Q - J| <= tol; holds for the Gram matrix of any symplectic basis.
bool siegel_gram_identity_check(const GramMatrix& q, const SymplecticForm& j, double tol);

/// Covolume-1 hexagonal Gram matrix (2/√3)·[[1, 1/2], [1/2, 1]].
GramMatrix hexagonal_gram();

}  // namespace wrlat
