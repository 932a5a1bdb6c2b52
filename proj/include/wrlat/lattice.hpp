#pragma once

// Lattices in R^n: bases, Gram matrices, short vector enumeration, systoles
// and the stratum index i of the filtration X_1 ⊃ X_2 ⊃ ... ⊃ X_n.

#include "wrlat/types.hpp"

#include <span>
#include <utility>

namespace wrlat {

/// Lattice basis; columns are the basis vectors.
class BasisMatrix {
 public:
  explicit BasisMatrix(Matrix entries);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double determinant() const { return m_.determinant(); }

 private:
  Matrix m_;
};

/// Symmetric positive definite Gram matrix. Construction symmetrizes the
/// input and throws NotPositiveDefiniteError if the Cholesky factorization
/// fails.
class GramMatrix {
 public:
  explicit GramMatrix(const Matrix& entries);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double determinant() const { return m_.determinant(); }

  /// tv·Q·v for an integer coordinate vector.
  double norm_sq(const IntVector& v) const;

  GramMatrix scaled(double c) const { return GramMatrix(c * m_); }
  /// tU·Q·U.
  GramMatrix transformed(const IntMatrix& u) const;

 private:
  Matrix m_;
};

struct MinimalVectorSet {
  double systole_sq = 0.0;
  // Sign-normalized (first nonzero coordinate positive), sorted by vector_order.
  std::vector<IntVector> vectors;
};

/// Rank over R of the span of the minimal vectors; the lattice lies in X_i
/// for every i <= value.
struct StratumIndex {
  int value = 0;
  friend bool operator==(StratumIndex, StratumIndex) = default;
  friend auto operator<=>(StratumIndex, StratumIndex) = default;
};

struct SpectrumEntry {
  double length_sq;
  std::size_t multiplicity;
};

// Basis and Gram construction.
BasisMatrix normalize_covolume(const BasisMatrix& b);
GramMatrix gram_of(const BasisMatrix& b);
/// Rescales a Gram matrix to determinant 1 (covolume 1).
GramMatrix normalize_gram(const GramMatrix& q);

struct LllResult {
  GramMatrix gram;  // tU·Q·U
  IntMatrix transform;
};

LllResult lll_reduce(const GramMatrix& q, double delta = kLllDelta);

/// Nonzero v with tv·Q·v <= radius_sq·(1 + band), one per ± pair.
std::vector<IntVector> enumerate_short_vectors(const GramMatrix& q, double radius_sq,
                                               double band = kSystoleBand,
                                               std::size_t cap = kEnumerationCap);

MinimalVectorSet systole_data(const GramMatrix& q, double band = kSystoleBand);

/// Exact rank over Q of integer vectors.
int integer_rank(std::span<const IntVector> vectors);
/// Indices of a maximal independent subset, picked greedily in input order.
std::vector<std::size_t> independent_subset(std::span<const IntVector> vectors);
/// True iff v lies in the Q-span of basis.
bool in_rational_span(std::span<const IntVector> basis, const IntVector& v);

StratumIndex span_rank(const MinimalVectorSet& m);
StratumIndex stratum_index(const GramMatrix& q, double band = kSystoleBand);
bool is_well_rounded(const GramMatrix& q, double band = kSystoleBand);

std::vector<SpectrumEntry> length_spectrum(const GramMatrix& q, int count,
                                           double band = kSystoleBand);

/// Flips the sign so that the first nonzero coordinate is positive.
IntVector sign_normalize(IntVector v);
/// Ordering used for minimal vector lists: lexicographically descending,
/// so that e_1, e_2, ... appear in index order.
bool vector_order(const IntVector& a, const IntVector& b);

std::int64_t integer_determinant(const IntMatrix& m);

}  // namespace wrlat
