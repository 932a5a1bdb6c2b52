#pragma once

// Isometric actions on Gram matrices. An automorphism of SL(n, Z) acts on
// points of SL(n, R)/SO(n) as Q ↦ tC·Q^{±1}·C: inner elements use the
// exponent +1, the outer automorphism σ(X) = (tX)^{-1} acts by Q ↦ Q^{-1},
// and compositions of the two carry both a conjugator and pre_dual = true.

#include "wrlat/scan.hpp"
#include "wrlat/symplectic.hpp"

#include <string>

namespace wrlat {

struct Automorphism {
  bool pre_dual = false;
  Matrix conjugator;
  std::string label;

  static Automorphism inner(const IntMatrix& c, std::string label = {});
  static Automorphism sigma(int n);
};

struct FiniteSubgroupSpec {
  std::vector<Automorphism> generators;
  std::string label;
};

GramMatrix act(const Automorphism& a, const GramMatrix& q);

bool is_fixed_point(const FiniteSubgroupSpec& group, const GramMatrix& q, double tol = 1e-9);

/// Least k <= 24 with a^k·probe = probe within 1e-9; throws NumericalError otherwise.
int generator_order(const Automorphism& a, const GramMatrix& probe);

/// U₀ = mobius_to_inner(A₀) = [[0, -1], [1, 1]], the Gram-level stabilizer of τ₀.
IntMatrix hexagonal_stabilizer();

/// Sign flips D_k (−I₂ in pair k) for k = 1..g and blockdiag(I₂, U₀, ..., U₀).
FiniteSubgroupSpec subgroup_H(int g);

/// σ composed with the inner automorphism turning Q^{-1} back into Q on the
/// Siegel locus: Q ↦ tC·Q^{-1}·C with C = -J in the paired coordinates.
Automorphism siegel_involution(int p);

/// Odd-dimensional analogue on R ⊕ R^{2p}: conjugator diag(1, -J).
Automorphism odd_siegel_involution(int p);

/// Even n = 2p: {α}. Odd n = 2p + 1: {α̃, inner diag(1, -1, ..., -1)}.
FiniteSubgroupSpec thm12_group(int n);

/// thm12_group extended by the product-structure generators: for even n the
/// generators of subgroup_H(p) (p >= 2), for odd n the sign flips
/// diag(1, I₂, ..., -I₂, ..., I₂) and diag(1, U₀, ..., U₀).
FiniteSubgroupSpec thm12_full_group(int n);

struct ReductionWord {
  // Letters applied left to right: 'T' with an exponent, or 'S'.
  struct Letter {
    char generator;
    std::int64_t power;
  };
  std::vector<Letter> letters;

  /// Matrix M with mobius(M, τ) equal to the reduced point.
  Int2x2 matrix() const;
  std::string to_string() const;
};

struct ReducedPoint {
  UpperHalfPoint tau;
  ReductionWord word;
};

/// Moves τ into {-1/2 < Re τ <= 1/2, |τ| >= 1} using T = [[1, 1], [0, 1]] and S = [[0, -1], [1, 0]].
ReducedPoint fundamental_domain_reduce(const UpperHalfPoint& tau);

/// Strata of product_embed(τ₁, τ₀) over a grid anchored at Im τ₀. Hits are
/// the points with stratum >= 3; the report flags whether every hit lies
/// within one grid step of τ₀ after reduction and has stratum exactly 4.
ScanReport claim_scan_g2(const GridSpec& grid, Execution exec = Execution::Parallel);

/// Certifies that Z ⊕ Λ₀^p is fixed by the full odd-dimensional group, has
/// a single minimal pair ±e₁ of squared length 1, and that random
/// perturbations of size `perturbation` break fixedness.
ScanReport verify_thm12_odd(int p, std::uint64_t seed = 0, int perturbations = 100,
                            double perturbation = 1e-2);

/// diag(1, Λ₀, ..., Λ₀) with covolume-1 hexagonal blocks.
GramMatrix odd_fixed_lattice(int p);

}  // namespace wrlat
