#include "wrlat/retraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wrlat {

namespace {

constexpr double kInitialHorizon = 0.69314718055994530942;  // ln 2
constexpr double kHorizonCap = 64.0;

double contraction_rate(int n, int k) { return static_cast<double>(k) / static_cast<double>(n - k); }

struct Candidate {
  IntVector w;
  double t;
};

}  // namespace

Matrix span_projector(const GramMatrix& q, const IntMatrix& v) {
  const Matrix vr = v.cast<double>();
  const Matrix qv = q.matrix() * vr;
  const Matrix inner = vr.transpose() * qv;
  Eigen::LLT<Matrix> llt(inner);
  if (llt.info() != Eigen::Success) throw NumericalError("ill-conditioned projector: tV·Q·V is singular");
  const Vector d = Eigen::LDLT<Matrix>(inner).vectorD();
  if (d.minCoeff() <= 1e-14 * d.maxCoeff()) throw NumericalError("ill-conditioned projector: tV·Q·V is singular");
  const Matrix pi = qv * llt.solve(qv.transpose());
  return 0.5 * (pi + pi.transpose());
}

GramMatrix flow_gram(const GramMatrix& q, const IntMatrix& v, double t) {
  const int n = q.dim();
  const int k = static_cast<int>(v.cols());
  if (k < 1 || k >= n) throw PreconditionError("flow needs 1 <= k < n spanning vectors");
  if (t == 0.0) return q;
  const Matrix pi = span_projector(q, v);
  const double expand = std::exp(2.0 * t);
  const double contract = std::exp(-2.0 * t * contraction_rate(n, k));
  return GramMatrix(expand * pi + contract * (q.matrix() - pi));
}

double candidate_horizon(const GramMatrix& q, int k, double t_max) {
  const int n = q.dim();
  if (k < 1 || k >= n) throw PreconditionError("candidate_horizon needs 1 <= k < n");
  if (!(t_max > 0.0)) throw PreconditionError("candidate_horizon needs t_max > 0");
  return std::exp(2.0 * t_max * n / (n - k)) * systole_data(q).systole_sq;
}

IntMatrix minimal_span_basis(const MinimalVectorSet& m) {
  const auto picked = independent_subset(m.vectors);
  const auto n = m.vectors.front().size();
  IntMatrix v(n, static_cast<Eigen::Index>(picked.size()));
  for (std::size_t c = 0; c < picked.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = m.vectors[picked[c]];
  return v;
}

FlowEvent first_event(const GramMatrix& q, double band) {
  const int n = q.dim();
  const MinimalVectorSet mins = systole_data(q, band);
  const IntMatrix v = minimal_span_basis(mins);
  const int k = static_cast<int>(v.cols());
  if (k >= n) throw PreconditionError("lattice is already well-rounded");

  std::vector<IntVector> span_basis;
  for (Eigen::Index c = 0; c < v.cols(); ++c) span_basis.emplace_back(v.col(c));

  const double s0 = mins.systole_sq;
  const double beta = contraction_rate(n, k);
  const Matrix pi = span_projector(q, v);

  // Along the flow, ℓ_w(t)² = e^{2t}·a + e^{-2βt}·b with a = tw·Π·w and
  // b = tw·(Q - Π)·w, while the systole level is e^{2t}·s0. For a < s0 the
  // difference is strictly decreasing and vanishes at
  //   t_w = ln(b / (s0 - a)) / (2 (1 + β));
  // for a >= s0 the vector never catches up. A vector meets the level before
  // t_max iff ℓ_w(t_max)² <= e^{2 t_max}·s0, so the candidates at horizon
  // t_max are the short vectors of Q_{t_max} at that radius.
  for (double t_max = kInitialHorizon; t_max <= kHorizonCap; t_max *= 2.0) {
    const GramMatrix qt = flow_gram(q, v, t_max);
    const auto shortlist = enumerate_short_vectors(qt, std::exp(2.0 * t_max) * s0, band);

    std::vector<Candidate> hits;
    for (const auto& w : shortlist) {
      if (in_rational_span(span_basis, w)) continue;
      const Vector x = w.cast<double>();
      const double a = x.dot(pi * x);
      const double b = x.dot(q.matrix() * x) - a;
      if (!(a < s0) || !(b > 0.0)) continue;
      const double t = std::log(b / (s0 - a)) / (2.0 * (1.0 + beta));
      if (t <= t_max) hits.push_back({w, std::max(t, 0.0)});
    }
    if (hits.empty()) continue;

    const double t_star =
        std::min_element(hits.begin(), hits.end(), [](const Candidate& l, const Candidate& r) { return l.t < r.t; })
            ->t;
    if (!(t_star > 0.0)) throw NumericalError("flow event at t = 0: minimal set was incomplete");

    // Admit every vector that sits on the systole level at t_star.
    const GramMatrix q_star = flow_gram(q, v, t_star);
    const double level = std::exp(2.0 * t_star) * s0;
    FlowEvent ev;
    ev.t_star = t_star;
    for (const auto& h : hits)
      if (q_star.norm_sq(h.w) <= level * (1.0 + kSystoleBand)) ev.new_vectors.push_back(h.w);
    std::sort(ev.new_vectors.begin(), ev.new_vectors.end(), vector_order);
    ev.stratum_before = k;
    std::vector<IntVector> all = span_basis;
    all.insert(all.end(), ev.new_vectors.begin(), ev.new_vectors.end());
    ev.stratum_after = integer_rank(all);
    return ev;
  }
  throw NumericalError("no flow event found before the horizon cap");
}

StepResult retract_step(const GramMatrix& q, double band) {
  FlowEvent ev = first_event(q, band);
  const MinimalVectorSet mins = systole_data(q, band);
  const GramMatrix next = flow_gram(q, minimal_span_basis(mins), ev.t_star);
  // The new vectors sit at a near-tie; recount with the looser band.
  ev.stratum_after = stratum_index(next, kEventBand).value;
  if (ev.stratum_after <= ev.stratum_before) throw NumericalError("flow event did not raise the stratum");
  const double det_drift = std::abs(next.determinant() / q.determinant() - 1.0);
  if (det_drift > 1e-9) throw NumericalError("flow step changed the covolume");
  return {next, std::move(ev)};
}

RetractionTrace well_rounded_retract(const GramMatrix& q) {
  RetractionTrace trace{q, {}, {}, q};
  double band = kSystoleBand;
  while (stratum_index(trace.final_gram, band).value < q.dim()) {
    if (static_cast<int>(trace.events.size()) >= q.dim() - 1)
      throw NumericalError("retraction exceeded n - 1 events");
    StepResult step = retract_step(trace.final_gram, band);
    trace.events.push_back(std::move(step.event));
    trace.checkpoints.push_back(step.gram);
    trace.final_gram = step.gram;
    band = kEventBand;
  }
  return trace;
}

}  // namespace wrlat
