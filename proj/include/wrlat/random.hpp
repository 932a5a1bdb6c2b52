#pragma once

// Seeded generators used by the verification suites. SplitMix64
// (Steele, Lea & Flood) keeps a single 64-bit state; every suite derives its
// inputs from --seed so runs are reproducible.

#include "wrlat/symplectic.hpp"

namespace wrlat {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>((*this)() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

/// Random U in GL(n, Z) with entries in [-bound, bound], built from
/// elementary moves (row additions, swaps, sign changes).
IntMatrix random_unimodular(SplitMix64& rng, int n, std::int64_t bound = 3, int moves = 0);

/// Random diagonal Gram matrix with entries in [lo, hi].
GramMatrix random_diagonal_gram(SplitMix64& rng, int n, double lo = 0.5, double hi = 5.0);

/// Gram matrix tB·B of a random real basis, normalized to determinant 1.
GramMatrix random_gram(SplitMix64& rng, int n);

/// Product of `factors` random symplectic generators: SL(2, R) elements on a
/// coordinate pair and symplectic transvections x ↦ x + s·ω(v, x)·v.
Matrix random_symplectic_basis(SplitMix64& rng, int g, int factors = 8);

/// Random point of the standard fundamental domain for SL(2, Z).
UpperHalfPoint random_fundamental_point(SplitMix64& rng, double im_max = 2.0);

}  // namespace wrlat
