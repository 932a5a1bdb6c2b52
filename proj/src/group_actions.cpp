#include "wrlat/group_actions.hpp"

#include "wrlat/random.hpp"

#include <cmath>
#include <sstream>

namespace wrlat {

namespace {

IntMatrix block_diagonal(std::int64_t corner, const std::vector<IntMatrix>& blocks) {
  Eigen::Index n = corner != 0 ? 1 : 0;
  for (const auto& b : blocks) n += b.rows();
  IntMatrix m = IntMatrix::Zero(n, n);
  Eigen::Index at = 0;
  if (corner != 0) m(at++, 0) = corner;
  for (const auto& b : blocks) {
    m.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return m;
}

IntMatrix identity2() { return IntMatrix::Identity(2, 2); }

// Sign flips −I₂ in each pair, optionally behind a fixed leading coordinate.
void add_sign_flips(FiniteSubgroupSpec& group, int g, bool leading) {
  for (int k = 0; k < g; ++k) {
    std::vector<IntMatrix> blocks(g, identity2());
    blocks[k] = -identity2();
    group.generators.push_back(Automorphism::inner(block_diagonal(leading ? 1 : 0, blocks),
                                                   "sign flip in pair " + std::to_string(k + 1)));
  }
}

void add_hexagonal_rotation(FiniteSubgroupSpec& group, int g, bool leading) {
  std::vector<IntMatrix> blocks(g, hexagonal_stabilizer());
  if (!leading) blocks[0] = identity2();
  group.generators.push_back(Automorphism::inner(block_diagonal(leading ? 1 : 0, blocks),
                                                 leading ? "(1, U0, ..., U0)" : "(I2, U0, ..., U0)"));
}

Int2x2 translation(std::int64_t k) {
  Int2x2 t;
  t << 1, k, 0, 1;
  return t;
}

Int2x2 inversion() {
  Int2x2 s;
  s << 0, -1, 1, 0;
  return s;
}

}  // namespace

Automorphism Automorphism::inner(const IntMatrix& c, std::string label) {
  return {false, c.cast<double>(), std::move(label)};
}

Automorphism Automorphism::sigma(int n) { return {true, Matrix::Identity(n, n), "sigma"}; }

GramMatrix act(const Automorphism& a, const GramMatrix& q) {
  if (a.conjugator.rows() != q.dim() || a.conjugator.cols() != q.dim())
    throw PreconditionError("automorphism and Gram matrix sizes differ");
  Matrix base = q.matrix();
  if (a.pre_dual) {
    Eigen::LLT<Matrix> llt(base);
    if (llt.info() != Eigen::Success) throw SingularMatrixError("Gram matrix cannot be inverted");
    base = llt.solve(Matrix::Identity(q.dim(), q.dim()));
  }
  return GramMatrix(a.conjugator.transpose() * base * a.conjugator);
}

bool is_fixed_point(const FiniteSubgroupSpec& group, const GramMatrix& q, double tol) {
  for (const auto& g : group.generators)
    if ((act(g, q).matrix() - q.matrix()).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

int generator_order(const Automorphism& a, const GramMatrix& probe) {
  GramMatrix cur = probe;
  for (int k = 1; k <= 24; ++k) {
    cur = act(a, cur);
    if ((cur.matrix() - probe.matrix()).cwiseAbs().maxCoeff() <= 1e-9) return k;
  }
  throw NumericalError("generator order exceeds 24");
}

IntMatrix hexagonal_stabilizer() { return mobius_to_inner(hexagonal_rotation()); }

FiniteSubgroupSpec subgroup_H(int g) {
  if (g < 2) throw PreconditionError("subgroup H needs g >= 2");
  FiniteSubgroupSpec h{{}, "H(g=" + std::to_string(g) + ")"};
  add_sign_flips(h, g, false);
  add_hexagonal_rotation(h, g, false);
  return h;
}

Automorphism siegel_involution(int p) {
  const Matrix c = -standard_J(p).j.cast<double>();
  return {true, c, "alpha"};
}

Automorphism odd_siegel_involution(int p) {
  Matrix c = Matrix::Zero(2 * p + 1, 2 * p + 1);
  c(0, 0) = 1.0;
  c.bottomRightCorner(2 * p, 2 * p) = -standard_J(p).j.cast<double>();
  return {true, c, "alpha~"};
}

FiniteSubgroupSpec thm12_group(int n) {
  if (n < 3) throw PreconditionError("the Aut(SL(n, Z)) subgroups need n >= 3");
  if (n % 2 == 0) return {{siegel_involution(n / 2)}, "<alpha>"};
  const int p = (n - 1) / 2;
  IntMatrix flip = -IntMatrix::Identity(n, n);
  flip(0, 0) = 1;
  return {{odd_siegel_involution(p), Automorphism::inner(flip, "(1, -1, ..., -1)")}, "H~"};
}

FiniteSubgroupSpec thm12_full_group(int n) {
  FiniteSubgroupSpec group = thm12_group(n);
  if (n % 2 == 0) {
    for (auto& gen : subgroup_H(n / 2).generators) group.generators.push_back(std::move(gen));
    group.label = "<alpha, H>";
  } else {
    const int p = (n - 1) / 2;
    add_sign_flips(group, p, true);
    add_hexagonal_rotation(group, p, true);
    group.label = "H^";
  }
  return group;
}

Int2x2 ReductionWord::matrix() const {
  Int2x2 m = Int2x2::Identity();
  for (const auto& l : letters) m = (l.generator == 'S' ? inversion() : translation(l.power)) * m;
  return m;
}

std::string ReductionWord::to_string() const {
  std::ostringstream os;
  for (const auto& l : letters) {
    if (l.generator == 'S')
      os << 'S';
    else
      os << 'T' << '^' << l.power;
    os << ' ';
  }
  std::string s = os.str();
  if (!s.empty()) s.pop_back();
  return s;
}

ReducedPoint fundamental_domain_reduce(const UpperHalfPoint& tau) {
  if (!(tau.y > 0.0)) throw PreconditionError("imaginary part must be positive");
  ReducedPoint out{tau, {}};
  std::complex<double> z = tau.as_complex();
  for (int it = 0; it < 10'000; ++it) {
    const auto shift = static_cast<std::int64_t>(std::ceil(z.real() - 0.5));
    if (shift != 0) {
      z -= static_cast<double>(shift);
      out.word.letters.push_back({'T', -shift});
    }
    if (std::norm(z) < 1.0 - 1e-12) {
      z = -1.0 / z;
      out.word.letters.push_back({'S', 1});
      continue;
    }
    out.tau = {z.real(), z.imag()};
    return out;
  }
  throw NumericalError("fundamental domain reduction did not converge");
}

ScanReport claim_scan_g2(const GridSpec& grid, Execution exec) {
  constexpr double slack = 1e-12;
  const double dy = (grid.im_max - grid.im_min) / std::max(grid.height - 1, 1);
  if (grid.re_min < -0.5 - slack || grid.re_max > 0.5 + slack || grid.im_max > 2.0 + slack ||
      grid.im_min < 0.9 * hexagonal_point().y - (grid.kind == GridKind::AnchoredAtHexagonal ? dy : 0.0) - slack)
    throw PreconditionError("claim scan region must lie in |Re τ| <= 1/2, 0.9·√3/2 <= Im τ <= 2");

  ScanReport report{grid, scan_grid(grid, ScanTarget::ProductWithHexagonal, exec), {}, {}};
  const UpperHalfPoint hex = hexagonal_point();
  const double step = grid.step();

  bool near = true;
  bool exact_four = true;
  bool hex_hit = false;
  for (const auto& p : report.points) {
    if (p.stratum < 3) continue;
    const UpperHalfPoint tau{p.re, p.im};
    const ReducedPoint red = fundamental_domain_reduce(tau);
    const double dist = std::abs(red.tau.as_complex() - hex.as_complex());
    near = near && dist <= step;
    exact_four = exact_four && p.stratum == 4;
    hex_hit = hex_hit || dist <= 1e-12;
    std::ostringstream id;
    id.precision(17);
    id << p.re << '+' << p.im << 'i';
    report.hits.push_back({id.str(), tau, red.tau, p.stratum, p.systole_sq});
  }
  report.flags.push_back({"hits within one grid step of tau0", near});
  report.flags.push_back({"hit strata equal 4", exact_four});
  const bool hex_on_grid = grid.kind == GridKind::AnchoredAtHexagonal && grid.re_max >= 0.5 - slack;
  if (hex_on_grid) report.flags.push_back({"tau0 grid point is a hit", hex_hit});
  return report;
}

GramMatrix odd_fixed_lattice(int p) {
  if (p < 1) throw PreconditionError("p must be at least 1");
  Matrix q = Matrix::Zero(2 * p + 1, 2 * p + 1);
  q(0, 0) = 1.0;
  const Matrix hex = hexagonal_gram().matrix();
  for (int k = 0; k < p; ++k) q.block(1 + 2 * k, 1 + 2 * k, 2, 2) = hex;
  return GramMatrix(q);
}

ScanReport verify_thm12_odd(int p, std::uint64_t seed, int perturbations, double perturbation) {
  const int n = 2 * p + 1;
  const GramMatrix q = odd_fixed_lattice(p);
  const FiniteSubgroupSpec group = thm12_full_group(n);
  const MinimalVectorSet mins = systole_data(q);
  const int stratum = span_rank(mins).value;

  ScanReport report;
  report.grid.width = perturbations;
  report.grid.height = 1;
  report.hits.push_back({"Z+hex^" + std::to_string(p), {}, {}, stratum, mins.systole_sq});

  IntVector e1 = IntVector::Zero(n);
  e1(0) = 1;
  report.flags.push_back({"fixed by the full group", is_fixed_point(group, q)});
  report.flags.push_back({"systole_sq = 1", std::abs(mins.systole_sq - 1.0) <= 1e-9});
  report.flags.push_back({"minimal vectors are only +-e1", mins.vectors.size() == 1 && mins.vectors[0] == e1});
  report.flags.push_back({"stratum 1 < 3", stratum == 1});

  SplitMix64 rng(seed);
  bool rejected = true;
  for (int trial = 0; trial < perturbations; ++trial) {
    Matrix e(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) e(i, j) = e(j, i) = rng.uniform(-perturbation, perturbation);
    rejected = rejected && !is_fixed_point(group, GramMatrix(q.matrix() + e));
  }
  report.flags.push_back({"perturbations leave the fixed set", rejected});
  return report;
}

}  // namespace wrlat
