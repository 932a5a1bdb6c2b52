#include "wrlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wrlat {

namespace {

using Wide = __int128;

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Row echelon elimination over Z with primitive rows. Each row of `rows`
// is reduced against the current echelon form; returns true if it
// survives (is independent of the rows already accepted).
class EchelonBasis {
 public:
  explicit EchelonBasis(int dim) : dim_(dim) {}

  bool insert(const IntVector& v) {
    std::vector<Wide> row(dim_);
    for (int i = 0; i < dim_; ++i) row[i] = v(i);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int p = pivots_[r];
      if (row[p] == 0) continue;
      const Wide a = rows_[r][p];
      const Wide b = row[p];
      for (int i = 0; i < dim_; ++i) row[i] = a * row[i] - b * rows_[r][i];
      make_primitive(row);
    }
    const auto it = std::find_if(row.begin(), row.end(), [](Wide x) { return x != 0; });
    if (it == row.end()) return false;
    pivots_.push_back(static_cast<int>(it - row.begin()));
    rows_.push_back(std::move(row));
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  static void make_primitive(std::vector<Wide>& row) {
    Wide g = 0;
    for (Wide x : row) g = wide_gcd(g, x);
    if (g > 1)
      for (Wide& x : row) x /= g;
  }

  int dim_;
  std::vector<std::vector<Wide>> rows_;
  std::vector<int> pivots_;
};

}  // namespace

BasisMatrix::BasisMatrix(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw Error("basis matrix must be square and nonempty");
}

GramMatrix::GramMatrix(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw Error("Gram matrix must be square and nonempty");
  if (!entries.allFinite()) throw NotPositiveDefiniteError("Gram matrix has non-finite entries");
  m_ = 0.5 * (entries + entries.transpose());
  Eigen::LLT<Matrix> llt(m_);
  if (llt.info() != Eigen::Success) throw NotPositiveDefiniteError("Gram matrix is not positive definite");
  // LLT only looks at the lower triangle; also reject vanishing pivots.
  const auto& l = llt.matrixL();
  for (int i = 0; i < dim(); ++i)
    if (!(l(i, i) > 0.0)) throw NotPositiveDefiniteError("Gram matrix is not positive definite");
}

double GramMatrix::norm_sq(const IntVector& v) const {
  const Vector x = v.cast<double>();
  return x.dot(m_ * x);
}

GramMatrix GramMatrix::transformed(const IntMatrix& u) const {
  const Matrix ur = u.cast<double>();
  return GramMatrix(ur.transpose() * m_ * ur);
}

BasisMatrix normalize_covolume(const BasisMatrix& b) {
  const double det = std::abs(b.determinant());
  if (!(det >= 1e-300)) throw SingularMatrixError("basis is singular");
  return BasisMatrix(b.matrix() * std::pow(det, -1.0 / b.dim()));
}

GramMatrix gram_of(const BasisMatrix& b) { return GramMatrix(b.matrix().transpose() * b.matrix()); }

GramMatrix normalize_gram(const GramMatrix& q) {
  return q.scaled(std::pow(q.determinant(), -1.0 / q.dim()));
}

IntVector sign_normalize(IntVector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0) {
      if (v(i) < 0) v = -v;
      break;
    }
  }
  return v;
}

bool vector_order(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MinimalVectorSet systole_data(const GramMatrix& q, double band) {
  // Any reduced basis vector bounds the minimum from above.
  const LllResult red = lll_reduce(q);
  const double bound = red.gram.matrix().diagonal().minCoeff();
  auto candidates = enumerate_short_vectors(q, bound, band);

  MinimalVectorSet out;
  out.systole_sq = bound;
  for (const auto& v : candidates) out.systole_sq = std::min(out.systole_sq, q.norm_sq(v));
  for (auto& v : candidates)
    if (std::abs(q.norm_sq(v) - out.systole_sq) <= band * out.systole_sq) out.vectors.push_back(std::move(v));
  std::sort(out.vectors.begin(), out.vectors.end(), vector_order);
  return out;
}

int integer_rank(std::span<const IntVector> vectors) {
  if (vectors.empty()) return 0;
  EchelonBasis e(static_cast<int>(vectors.front().size()));
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::vector<std::size_t> independent_subset(std::span<const IntVector> vectors) {
  std::vector<std::size_t> picked;
  if (vectors.empty()) return picked;
  EchelonBasis e(static_cast<int>(vectors.front().size()));
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (e.insert(vectors[i])) picked.push_back(i);
  return picked;
}

bool in_rational_span(std::span<const IntVector> basis, const IntVector& v) {
  EchelonBasis e(static_cast<int>(v.size()));
  for (const auto& b : basis) e.insert(b);
  return !e.insert(v);
}

StratumIndex span_rank(const MinimalVectorSet& m) {
  if (m.vectors.empty()) throw PreconditionError("empty minimal vector set");
  return StratumIndex{integer_rank(m.vectors)};
}

StratumIndex stratum_index(const GramMatrix& q, double band) { return span_rank(systole_data(q, band)); }

bool is_well_rounded(const GramMatrix& q, double band) { return stratum_index(q, band).value == q.dim(); }

std::vector<SpectrumEntry> length_spectrum(const GramMatrix& q, int count, double band) {
  if (count < 1) throw PreconditionError("length_spectrum needs count >= 1");
  double radius = lll_reduce(q).gram.matrix().diagonal().maxCoeff();
  while (true) {
    const auto vs = enumerate_short_vectors(q, radius, band);
    std::vector<double> lengths;
    lengths.reserve(vs.size());
    for (const auto& v : vs) lengths.push_back(q.norm_sq(v));
    std::sort(lengths.begin(), lengths.end());

    std::vector<SpectrumEntry> groups;
    for (double l : lengths) {
      if (groups.empty() || l > groups.back().length_sq * (1.0 + band))
        groups.push_back({l, 1});
      else
        ++groups.back().multiplicity;
    }
    // The last group may be cut off by the radius; only groups strictly
    // inside are known to be complete.
    std::erase_if(groups, [&](const SpectrumEntry& g) { return g.length_sq > radius * (1.0 - band); });
    if (static_cast<int>(groups.size()) >= count) {
      groups.resize(count);
      return groups;
    }
    radius *= 2.0;
  }
}

std::int64_t integer_determinant(const IntMatrix& m) {
  // Bareiss fraction-free elimination.
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1;
  std::vector<std::vector<Wide>> a(n, std::vector<Wide>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  Wide prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return static_cast<std::int64_t>(sign * a[n - 1][n - 1]);
}

}  // namespace wrlat
