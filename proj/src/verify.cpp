#include "wrlat/verify.hpp"

#include "wrlat/group_actions.hpp"
#include "wrlat/io.hpp"
#include "wrlat/random.hpp"
#include "wrlat/retraction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace wrlat {

namespace {

const double kHexSystoleSq = 2.0 / std::sqrt(3.0);

Check check_le(std::string what, double measured, double bound) {
  return {std::move(what), measured, bound, measured <= bound};
}

Check check_true(std::string what, bool ok) { return {std::move(what), ok ? 1.0 : 0.0, 1.0, ok}; }

Check check_eq(std::string what, double measured, double expected) {
  return {std::move(what), measured, expected, measured == expected};
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

GramMatrix diag_gram(std::initializer_list<double> entries) {
  Vector d(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) d(i++) = e;
  return GramMatrix(d.asDiagonal().toDenseMatrix());
}

bool supported_in_one_pair(const IntVector& v) {
  int pairs = 0;
  for (Eigen::Index k = 0; k + 1 < v.size(); k += 2) pairs += (v(k) != 0 || v(k + 1) != 0) ? 1 : 0;
  return pairs == 1;
}

GridSpec claim_grid(const VerifyOptions& opt) {
  GridSpec g;
  g.kind = GridKind::AnchoredAtHexagonal;
  g.width = opt.grid_width.value_or(200);
  g.height = opt.grid_height.value_or(120);
  g.im_max = opt.im_max;
  return g;
}

}  // namespace

bool VerificationOutcome::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hex-systole", "hex-maximality", "flow-oracle",
                                              "flow-generic", "equivariance",  "product-systoles",
                                              "claim-g2",    "qjq",            "thm12-odd",
                                              "bavard-witness"};
  return names;
}

VerificationOutcome verify_hex_systole(const VerifyOptions& opt) {
  VerificationOutcome out{"hex-systole", {}};
  const MinimalVectorSet m = systole_data(hexagonal_gram());
  const double tol = opt.tol_or(1e-9);
  out.checks.push_back(check_le("|systole_sq - 2/sqrt(3)|", std::abs(m.systole_sq - kHexSystoleSq), tol));
  out.checks.push_back(
      check_le("|systole - (4/3)^(1/4)|", std::abs(std::sqrt(m.systole_sq) - std::pow(4.0 / 3.0, 0.25)), tol));
  out.checks.push_back(check_eq("minimal vectors up to sign", static_cast<double>(m.vectors.size()), 3));
  out.checks.push_back(check_eq("stratum", span_rank(m).value, 2));
  return out;
}

VerificationOutcome verify_hex_maximality(const VerifyOptions& opt) {
  VerificationOutcome out{"hex-maximality", {}};
  GridSpec grid;
  grid.kind = GridKind::FundamentalDomain;
  grid.width = opt.grid_width.value_or(100);
  grid.height = opt.grid_height.value_or(50);
  grid.im_min = 0.5;
  grid.im_max = opt.im_max;
  const auto points = scan_grid(grid, ScanTarget::SingleFactor, opt.exec);
  const double tol = opt.tol_or(1e-9);

  double max_sys = 0.0;
  double worst_distance = 0.0;
  int at_max = 0;
  const auto hex = hexagonal_point().as_complex();
  for (const auto& p : points) {
    max_sys = std::max(max_sys, p.systole_sq);
    if (p.systole_sq >= kHexSystoleSq - tol) {
      ++at_max;
      const auto red = fundamental_domain_reduce({p.re, p.im});
      worst_distance = std::max(worst_distance, std::abs(red.tau.as_complex() - hex));
    }
  }
  out.checks.push_back(check_le("max systole_sq - 2/sqrt(3)", max_sys - kHexSystoleSq, tol));
  out.checks.push_back(check_le("distance of maximal points to tau0", worst_distance, grid.step()));
  out.checks.push_back(check_true("tau0 attains the maximum on the grid", at_max > 0));
  return out;
}

VerificationOutcome verify_flow_oracle(const VerifyOptions& opt) {
  VerificationOutcome out{"flow-oracle", {}};
  const double tol = opt.tol_or(1e-10);

  const auto t1 = well_rounded_retract(diag_gram({1.0, 4.0}));
  out.checks.push_back(check_eq("diag(1,4): events", static_cast<double>(t1.events.size()), 1));
  if (t1.events.size() == 1)
    out.checks.push_back(
        check_le("diag(1,4): |t* - ln2/2|", std::abs(t1.events[0].t_star - std::numbers::ln2 / 2.0), tol));
  out.checks.push_back(check_le("diag(1,4): final vs diag(2,2)",
                                max_abs_diff(t1.final_gram.matrix(), 2.0 * Matrix::Identity(2, 2)), 1e-9));

  const auto t2 = well_rounded_retract(diag_gram({1.0, 1.0, 9.0}));
  out.checks.push_back(check_eq("diag(1,1,9): events", static_cast<double>(t2.events.size()), 1));
  if (t2.events.size() == 1)
    out.checks.push_back(
        check_le("diag(1,1,9): |t* - ln9/6|", std::abs(t2.events[0].t_star - std::log(9.0) / 6.0), tol));
  out.checks.push_back(
      check_le("diag(1,1,9): final vs 9^(1/3) I",
               max_abs_diff(t2.final_gram.matrix(), std::cbrt(9.0) * Matrix::Identity(3, 3)), 1e-9));

  const auto t3 = well_rounded_retract(diag_gram({0.5, 2.0}));
  if (t3.events.size() == 1)
    out.checks.push_back(
        check_le("diag(1/2,2): |t* - ln2/2|", std::abs(t3.events[0].t_star - std::numbers::ln2 / 2.0), tol));
  out.checks.push_back(
      check_le("diag(1/2,2): final vs I", max_abs_diff(t3.final_gram.matrix(), Matrix::Identity(2, 2)), 1e-9));
  return out;
}

VerificationOutcome verify_flow_generic(const VerifyOptions& opt) {
  VerificationOutcome out{"flow-generic", {}};
  SplitMix64 rng(opt.seed ^ 0x666c6f77ULL);
  constexpr int kLattices = 100;
  constexpr std::array<int, 4> dims{2, 3, 4, 5};

  int failures = 0;
  int too_many_events = 0;
  int not_well_rounded = 0;
  double det_drift = 0.0;
  double tracking = 0.0;
  for (int trial = 0; trial < kLattices; ++trial) {
    const int n = dims[trial % dims.size()];
    const GramMatrix q = random_diagonal_gram(rng, n).transformed(random_unimodular(rng, n));
    try {
      const RetractionTrace trace = well_rounded_retract(q);
      if (static_cast<int>(trace.events.size()) > n - 1) ++too_many_events;
      if (!is_well_rounded(trace.final_gram, kEventBand)) ++not_well_rounded;
      det_drift = std::max(det_drift, std::abs(trace.final_gram.determinant() / q.determinant() - 1.0));

      GramMatrix seg = q;
      for (std::size_t e = 0; e < trace.events.size(); ++e) {
        const MinimalVectorSet m = systole_data(seg, e == 0 ? kSystoleBand : kEventBand);
        const IntMatrix v = minimal_span_basis(m);
        const double t_star = trace.events[e].t_star;
        for (int s = 1; s <= 10; ++s) {
          const double t = t_star * s / 11.0;
          const double sys = systole_data(flow_gram(seg, v, t)).systole_sq;
          const double expect = std::exp(2.0 * t) * m.systole_sq;
          tracking = std::max(tracking, std::abs(sys / expect - 1.0));
        }
        seg = trace.checkpoints[e];
      }
    } catch (const Error&) {
      ++failures;
    }
  }
  out.checks.push_back(check_eq("lattices whose flow failed", failures, 0));
  out.checks.push_back(check_eq("traces with more than n-1 events", too_many_events, 0));
  out.checks.push_back(check_eq("final lattices not well-rounded", not_well_rounded, 0));
  out.checks.push_back(check_le("max relative determinant drift", det_drift, opt.tol_or(1e-8)));
  out.checks.push_back(check_le("max relative systole tracking error", tracking, opt.tol_or(1e-8)));
  return out;
}

VerificationOutcome verify_equivariance(const VerifyOptions& opt) {
  VerificationOutcome out{"equivariance", {}};
  SplitMix64 rng(opt.seed ^ 0x65717569ULL);
  double gram_err = 0.0;
  double time_err = 0.0;
  int mismatched_events = 0;
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const GramMatrix q = random_gram(rng, n);
    const IntMatrix u = random_unimodular(rng, n, 3);
    try {
      const RetractionTrace base = well_rounded_retract(q);
      const RetractionTrace moved = well_rounded_retract(q.transformed(u));
      const Matrix ur = u.cast<double>();
      gram_err = std::max(gram_err, max_abs_diff(moved.final_gram.matrix(),
                                                 ur.transpose() * base.final_gram.matrix() * ur));
      if (base.events.size() != moved.events.size()) {
        ++mismatched_events;
        continue;
      }
      for (std::size_t e = 0; e < base.events.size(); ++e)
        time_err = std::max(time_err, std::abs(base.events[e].t_star - moved.events[e].t_star));
    } catch (const Error&) {
      ++failures;
    }
  }
  out.checks.push_back(check_eq("failed flows", failures, 0));
  out.checks.push_back(check_eq("traces with different event counts", mismatched_events, 0));
  out.checks.push_back(check_le("max |final(tUQU) - tU final U|", gram_err, opt.tol_or(1e-6)));
  out.checks.push_back(check_le("max event time difference", time_err, opt.tol_or(1e-9)));
  return out;
}

VerificationOutcome verify_product_systoles(const VerifyOptions& opt) {
  VerificationOutcome out{"product-systoles", {}};
  SplitMix64 rng(opt.seed ^ 0x70726f64ULL);
  int not_localized = 0;
  int criterion_mismatch = 0;
  int positives = 0;
  int negatives = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::array<UpperHalfPoint, 2> taus;
    switch (trial % 3) {
      case 0:
        taus = {random_fundamental_point(rng), random_fundamental_point(rng)};
        break;
      case 1: {
        // Well-rounded factor on the unit arc, second factor at the same height.
        const double theta = rng.uniform(std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0);
        const double c = std::abs(std::cos(theta));
        const double x = rng.uniform(c, 0.5) * (rng() & 1 ? 1.0 : -1.0);
        taus = {UpperHalfPoint{std::cos(theta), std::sin(theta)}, UpperHalfPoint{x, std::sin(theta)}};
        break;
      }
      default: {
        // Equal systoles, neither factor well-rounded.
        const double y = rng.uniform(1.05, 2.0);
        taus = {UpperHalfPoint{rng.uniform(-0.45, 0.45), y}, UpperHalfPoint{rng.uniform(-0.45, 0.45), y}};
        break;
      }
    }
    if (rng() & 1) std::swap(taus[0], taus[1]);

    const MinimalVectorSet prod = systole_data(product_embed(taus).gram());
    for (const auto& v : prod.vectors)
      if (!supported_in_one_pair(v)) ++not_localized;

    const MinimalVectorSet f1 = systole_data(gram_of(tau_to_basis(taus[0])));
    const MinimalVectorSet f2 = systole_data(gram_of(tau_to_basis(taus[1])));
    const bool agree =
        std::abs(f1.systole_sq - f2.systole_sq) <= kSystoleBand * std::max(f1.systole_sq, f2.systole_sq);
    const bool one_wr = span_rank(f1).value == 2 || span_rank(f2).value == 2;
    const bool three = span_rank(prod).value >= 3;
    if (three != (agree && one_wr)) ++criterion_mismatch;
    (three ? positives : negatives) += 1;
  }
  out.checks.push_back(check_eq("minimal vectors spanning two factors", not_localized, 0));
  out.checks.push_back(check_eq("three-systole criterion mismatches", criterion_mismatch, 0));
  out.checks.push_back(check_true("samples cover stratum >= 3 and < 3", positives > 0 && negatives > 0));
  return out;
}

VerificationOutcome verify_claim_g2(const VerifyOptions& opt) {
  VerificationOutcome out{"claim-g2", {}};
  const GridSpec grid = claim_grid(opt);
  const ScanReport report = claim_scan_g2(grid, opt.exec);
  if (opt.out_csv) write_text(*opt.out_csv, scan_csv(report.points));
  out.checks.push_back(check_eq("grid points scanned", static_cast<double>(report.points.size()),
                                static_cast<double>(grid.width) * grid.height));
  for (const auto& f : report.flags) out.checks.push_back(check_true(f.name, f.ok));
  out.checks.push_back(check_le("hits (stratum >= 3)", static_cast<double>(report.hits.size()), 2));
  return out;
}

VerificationOutcome verify_qjq(const VerifyOptions& opt) {
  VerificationOutcome out{"qjq", {}};
  SplitMix64 rng(opt.seed ^ 0x716a71ULL);
  const SymplecticForm j = standard_J(2);
  const FiniteSubgroupSpec alpha = thm12_group(4);
  const double tol = opt.tol_or(1e-8);

  double worst_sym = 0.0;
  int sym_not_fixed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const GramMatrix q = SiegelPoint(random_symplectic_basis(rng, 2), 1e-9).gram();
    const Matrix jr = j.j.cast<double>();
    worst_sym = std::max(worst_sym, max_abs_diff(q.matrix() * jr * q.matrix(), jr));
    if (!is_fixed_point(alpha, q)) ++sym_not_fixed;
  }
  int nonsym_passing = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const GramMatrix q = random_gram(rng, 4);
    if (siegel_gram_identity_check(q, j, tol) || is_fixed_point(alpha, q)) ++nonsym_passing;
  }
  out.checks.push_back(check_le("max |QJQ - J| over symplectic Grams", worst_sym, tol));
  out.checks.push_back(check_eq("symplectic Grams not fixed by alpha", sym_not_fixed, 0));
  out.checks.push_back(check_eq("non-symplectic Grams passing either test", nonsym_passing, 0));
  return out;
}

VerificationOutcome verify_thm12_odd_suite(const VerifyOptions& opt) {
  VerificationOutcome out{"thm12-odd", {}};
  std::vector<int> ps = opt.p ? std::vector<int>{*opt.p} : std::vector<int>{1, 2};
  for (int p : ps) {
    const ScanReport r = verify_thm12_odd(p, opt.seed);
    const std::string tag = "p=" + std::to_string(p) + ": ";
    for (const auto& f : r.flags) out.checks.push_back(check_true(tag + f.name, f.ok));
  }
  return out;
}

VerificationOutcome verify_bavard_witness(const VerifyOptions&) {
  VerificationOutcome out{"bavard-witness", {}};
  const std::array<UpperHalfPoint, 2> square_hex{UpperHalfPoint{0.0, 1.0}, hexagonal_point()};
  const SiegelPoint p1 = product_embed(square_hex);
  out.checks.push_back(check_true("product(i, tau0) in Bavard set", in_bavard_set(p1)));
  out.checks.push_back(check_eq("product(i, tau0) stratum", stratum_index(p1.gram()).value, 2));
  const std::array<UpperHalfPoint, 2> tall{UpperHalfPoint{0.0, 2.0}, UpperHalfPoint{0.0, 2.0}};
  const SiegelPoint p2 = product_embed(tall);
  out.checks.push_back(check_true("product(2i, 2i) outside Bavard set", !in_bavard_set(p2)));
  out.checks.push_back(check_eq("product(2i, 2i) stratum", stratum_index(p2.gram()).value, 2));
  return out;
}

std::vector<VerificationOutcome> run_suite(const std::string& name, const VerifyOptions& opt) {
  using Fn = VerificationOutcome (*)(const VerifyOptions&);
  static const std::vector<std::pair<std::string, Fn>> table{
      {"hex-systole", verify_hex_systole},       {"hex-maximality", verify_hex_maximality},
      {"flow-oracle", verify_flow_oracle},       {"flow-generic", verify_flow_generic},
      {"equivariance", verify_equivariance},     {"product-systoles", verify_product_systoles},
      {"claim-g2", verify_claim_g2},             {"qjq", verify_qjq},
      {"thm12-odd", verify_thm12_odd_suite},     {"bavard-witness", verify_bavard_witness},
  };
  std::vector<VerificationOutcome> out;
  for (const auto& [suite, fn] : table)
    if (name == "all" || name == suite) out.push_back(fn(opt));
  if (out.empty()) throw UnknownSuiteError("unknown suite '" + name + "'");
  return out;
}

}  // namespace wrlat
