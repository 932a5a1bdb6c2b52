#include "wrlat/random.hpp"
#include "wrlat/symplectic.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace wrlat;

namespace {

const double kSqrt3 = std::sqrt(3.0);

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

Int2x2 int2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  Int2x2 m;
  m << a, b, c, d;
  return m;
}

MinimalVectorSet unit_set(int n, std::initializer_list<int> idx) {
  MinimalVectorSet m;
  m.systole_sq = 1.0;
  for (int i : idx) m.vectors.push_back(IntVector::Unit(n, i));
  return m;
}

SiegelPoint embed(std::initializer_list<UpperHalfPoint> taus) {
  const std::vector<UpperHalfPoint> v(taus);
  return product_embed(v);
}

}  // namespace

TEST_CASE("standard_J") {
  IntMatrix j1(2, 2);
  j1 << 0, -1, 1, 0;
  CHECK(standard_J(1).j == j1);

  const IntMatrix j2 = standard_J(2).j;
  CHECK(j2.block(0, 0, 2, 2) == j1);
  CHECK(j2.block(2, 2, 2, 2) == j1);
  CHECK(j2.block(0, 2, 2, 2).isZero());
  CHECK(j2.block(2, 0, 2, 2).isZero());

  for (int g = 1; g <= 5; ++g) {
    const IntMatrix j = standard_J(g).j;
    CHECK(j * j == -IntMatrix::Identity(2 * g, 2 * g));
    CHECK(j.transpose() == -j);
  }
}

TEST_CASE("is_symplectic") {
  CHECK(is_symplectic(Matrix::Identity(4, 4)));
  CHECK(is_symplectic(hexagonal_rotation().cast<double>()));
  CHECK_FALSE(is_symplectic(Eigen::Vector2d(2.0, 1.0).asDiagonal().toDenseMatrix()));
  CHECK_THROWS_AS(is_symplectic(Matrix::Identity(3, 3)), PreconditionError);
  CHECK_THROWS_AS(SiegelPoint(Matrix::Identity(2, 2) * 2.0), PreconditionError);
}

TEST_CASE("tau_to_basis") {
  CHECK(max_diff(tau_to_basis({0.0, 1.0}).matrix(), Matrix::Identity(2, 2)) < 1e-15);

  Matrix hex(2, 2);
  hex << 1.0, 0.5, 0.0, kSqrt3 / 2;
  hex *= std::sqrt(2.0 / kSqrt3);
  CHECK(max_diff(tau_to_basis(hexagonal_point()).matrix(), hex) < 1e-14);
  CHECK(max_diff(gram_of(tau_to_basis(hexagonal_point())).matrix(), hexagonal_gram().matrix()) < 1e-14);

  Matrix hg(2, 2);
  hg << 1.0, 0.5, 0.5, 1.0;
  CHECK(max_diff(hexagonal_gram().matrix(), 2.0 / kSqrt3 * hg) < 1e-15);

  const BasisMatrix b = tau_to_basis({0.0, 2.0});
  CHECK(max_diff(b.matrix(), Eigen::Vector2d(1 / std::sqrt(2.0), std::sqrt(2.0)).asDiagonal().toDenseMatrix()) < 1e-15);
  CHECK(max_diff(gram_of(b).matrix(), Eigen::Vector2d(0.5, 2.0).asDiagonal().toDenseMatrix()) < 1e-15);

  CHECK_THROWS_AS(tau_to_basis({0.3, 0.0}), PreconditionError);
  CHECK_THROWS_AS(tau_to_basis({0.3, -1.0}), PreconditionError);

  SplitMix64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const UpperHalfPoint t{rng.uniform(-3, 3), rng.uniform(0.1, 5)};
    CHECK(std::abs(tau_to_basis(t).matrix().determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("hexagonal_point") {
  const UpperHalfPoint t0 = hexagonal_point();
  CHECK(t0.x == 0.5);
  CHECK(std::abs(t0.y - 0.8660254037844386) < 1e-15);
  CHECK(std::abs(t0.as_complex() - std::polar(1.0, M_PI / 3)) < 1e-15);
  CHECK(std::abs(systole_data(gram_of(tau_to_basis(t0))).systole_sq - 2.0 / kSqrt3) < 1e-12);
}

TEST_CASE("mobius") {
  const UpperHalfPoint t0 = hexagonal_point();
  const UpperHalfPoint same = mobius(Int2x2::Identity(), {0.3, 0.7});
  CHECK(same.x == doctest::Approx(0.3));
  CHECK(same.y == doctest::Approx(0.7));

  const UpperHalfPoint f = mobius(hexagonal_rotation(), t0);
  CHECK(std::abs(f.x - t0.x) < 1e-15);
  CHECK(std::abs(f.y - t0.y) < 1e-15);

  const UpperHalfPoint g = mobius(hexagonal_rotation(), {0.0, 2.0});
  CHECK(std::abs(g.x - 1.0) < 1e-15);
  CHECK(std::abs(g.y - 0.5) < 1e-15);
}

TEST_CASE("mobius_to_inner") {
  CHECK(mobius_to_inner(Int2x2::Identity()) == Int2x2::Identity());
  CHECK(mobius_to_inner(hexagonal_rotation()) == int2(0, -1, 1, 1));
  CHECK(mobius_to_inner(int2(1, 1, 0, 1)) == int2(1, 1, 0, 1));

  Matrix qhex(2, 2);
  qhex << 1.0, 0.5, 0.5, 1.0;
  const Matrix u0 = mobius_to_inner(hexagonal_rotation()).cast<double>();
  CHECK(max_diff(u0.transpose() * qhex * u0, qhex) < 1e-15);
}

TEST_CASE("homography and Gram dictionary agree") {
  const std::array<Int2x2, 4> letters{int2(1, 1, 0, 1), int2(1, -1, 0, 1), int2(0, -1, 1, 0), int2(0, 1, -1, 0)};
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Int2x2 m = Int2x2::Identity();
    const auto len = rng.integer(0, 5);
    for (int i = 0; i < len; ++i) m = m * letters[static_cast<std::size_t>(rng.integer(0, 3))];
    const UpperHalfPoint tau{rng.uniform(-1, 1), rng.uniform(0.5, 2)};
    const Matrix u = mobius_to_inner(m).cast<double>();
    const Matrix lhs = gram_of(tau_to_basis(mobius(m, tau))).matrix();
    const Matrix rhs = u.transpose() * gram_of(tau_to_basis(tau)).matrix() * u;
    CHECK(max_diff(lhs, rhs) < 1e-9);
  }
}

TEST_CASE("product_embed") {
  const UpperHalfPoint i{0.0, 1.0};
  const UpperHalfPoint t0 = hexagonal_point();
  CHECK(max_diff(embed({i, i}).basis(), Matrix::Identity(4, 4)) < 1e-15);

  const SiegelPoint hh = embed({t0, t0});
  CHECK(hh.genus() == 2);
  CHECK(max_diff(hh.basis().block(0, 0, 2, 2), tau_to_basis(t0).matrix()) < 1e-15);
  CHECK(max_diff(hh.basis().block(2, 2, 2, 2), tau_to_basis(t0).matrix()) < 1e-15);
  CHECK(hh.basis().block(0, 2, 2, 2).isZero());
  CHECK(stratum_index(hh.gram()).value == 4);

  const SiegelPoint ih = embed({i, t0});
  Matrix expect = Matrix::Zero(4, 4);
  expect.block(0, 0, 2, 2) = Matrix::Identity(2, 2);
  expect.block(2, 2, 2, 2) = hexagonal_gram().matrix();
  CHECK(max_diff(ih.gram().matrix(), expect) < 1e-14);
  CHECK(stratum_index(ih.gram()).value == 2);

  const std::vector<UpperHalfPoint> none;
  CHECK_THROWS_AS(product_embed(none), PreconditionError);
}

TEST_CASE("restricted_form") {
  const SymplecticForm j2 = standard_J(2);
  IntMatrix expect(2, 2);
  expect << 0, -1, 1, 0;
  CHECK(restricted_form(unit_set(4, {0, 1}), j2) == expect);
  CHECK(restricted_form(unit_set(4, {0, 2}), j2) == IntMatrix::Zero(2, 2));
  for (int g = 1; g <= 3; ++g) CHECK(restricted_form(unit_set(2 * g, {0}), standard_J(g)) == IntMatrix::Zero(1, 1));
  // Dependent vectors are dropped before restricting.
  MinimalVectorSet m = unit_set(4, {0, 1});
  m.vectors.push_back(IntVector::Unit(4, 0) + IntVector::Unit(4, 1));
  CHECK(restricted_form(m, j2).rows() == 2);
}

TEST_CASE("in_bavard_set") {
  const UpperHalfPoint t0 = hexagonal_point();
  CHECK(in_bavard_set(embed({{0.0, 1.0}, t0})));
  CHECK_FALSE(in_bavard_set(embed({{0.0, 2.0}, {0.0, 2.0}})));
  CHECK(in_bavard_set(embed({t0, t0})));
}

TEST_CASE("siegel_gram_identity_check") {
  const SymplecticForm j2 = standard_J(2);
  CHECK(siegel_gram_identity_check(GramMatrix(Matrix::Identity(4, 4)), j2, 1e-12));
  const UpperHalfPoint t0 = hexagonal_point();
  CHECK(siegel_gram_identity_check(embed({t0, t0}).gram(), j2, 1e-12));
  CHECK_FALSE(siegel_gram_identity_check(GramMatrix(Eigen::Vector4d(2, 1, 1, 1).asDiagonal().toDenseMatrix()), j2, 1e-8));

  SplitMix64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int g = 1 + trial % 3;
    const SiegelPoint p(random_symplectic_basis(rng, g));
    CHECK(siegel_gram_identity_check(p.gram(), standard_J(g), 1e-8));
  }
}

TEST_CASE("product minimal vectors live in one coordinate pair") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const int g = 2 + trial % 2;
    std::vector<UpperHalfPoint> taus;
    for (int k = 0; k < g; ++k) taus.push_back(random_fundamental_point(rng));
    // Force ties in some trials.
    if (trial % 4 == 0) taus[1] = taus[0];
    const MinimalVectorSet m = systole_data(product_embed(taus).gram());
    for (const auto& v : m.vectors) {
      int pairs = 0;
      for (int k = 0; k < g; ++k) pairs += (v(2 * k) != 0 || v(2 * k + 1) != 0) ? 1 : 0;
      CHECK(pairs == 1);
    }
  }
}

TEST_CASE("three systoles need equal factor systoles and a well-rounded factor") {
  SplitMix64 rng(31);
  const UpperHalfPoint t0 = hexagonal_point();
  for (int trial = 0; trial < 60; ++trial) {
    UpperHalfPoint a = random_fundamental_point(rng);
    UpperHalfPoint b = random_fundamental_point(rng);
    switch (trial % 4) {
      case 0: b = a; break;                                   // equal systoles, maybe not well-rounded
      case 1: {                                                // both on the unit circle
        const double x = rng.uniform(-0.5, 0.5);
        a = {x, std::sqrt(1.0 - x * x)};
        b = {-x, a.y};
        break;
      }
      case 2: b = t0; break;
      default: break;
    }
    const GramMatrix ga = gram_of(tau_to_basis(a));
    const GramMatrix gb = gram_of(tau_to_basis(b));
    const double sa = systole_data(ga).systole_sq;
    const double sb = systole_data(gb).systole_sq;
    const bool same = std::abs(sa - sb) <= kSystoleBand * std::max(sa, sb);
    const bool wr = is_well_rounded(ga) || is_well_rounded(gb);
    const std::vector<UpperHalfPoint> taus{a, b};
    CHECK((stratum_index(product_embed(taus).gram()).value >= 3) == (same && wr));
  }
}

TEST_CASE("well-rounded factors do not make a well-rounded product") {
  const GramMatrix q = embed({{0.0, 1.0}, hexagonal_point()}).gram();
  CHECK(is_well_rounded(gram_of(tau_to_basis({0.0, 1.0}))));
  CHECK(is_well_rounded(hexagonal_gram()));
  CHECK(stratum_index(q).value == 2);
}

TEST_CASE("symplectic bases are closed under products and inverses") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int g = 1 + trial % 3;
    const Matrix a = random_symplectic_basis(rng, g);
    const Matrix b = random_symplectic_basis(rng, g);
    CHECK(is_symplectic(a, 1e-9));
    CHECK(is_symplectic(a * b, 1e-9));
    CHECK(is_symplectic(a.inverse(), 1e-9));
    CHECK(std::abs(a.determinant() - 1.0) < 1e-9);
  }
}
