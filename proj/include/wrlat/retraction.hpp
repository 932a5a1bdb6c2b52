#pragma once

// Well-rounding deformation. For a lattice whose minimal vectors span a
// k-dimensional subspace V, the flow expands V by e^t and contracts its
// Q-orthogonal complement at the volume-preserving rate e^{-tk/(n-k)} until
// a vector outside V becomes minimal. Iterating reaches the well-rounded
// locus in at most n - 1 events.

#include "wrlat/lattice.hpp"

namespace wrlat {

struct FlowEvent {
  double t_star = 0.0;
  std::vector<IntVector> new_vectors;
  int stratum_before = 0;
  int stratum_after = 0;
};

struct RetractionTrace {
  GramMatrix start;
  std::vector<FlowEvent> events;
  // Gram matrix right after each event.
  std::vector<GramMatrix> checkpoints;
  GramMatrix final_gram;
};

/// Gram matrix of the Q-orthogonal projection onto span(V): Q·V·(tV·Q·V)^{-1}·tV·Q.
Matrix span_projector(const GramMatrix& q, const IntMatrix& v);

/// Q_t = e^{2t}·Π + e^{-2tk/(n-k)}·(Q - Π).
GramMatrix flow_gram(const GramMatrix& q, const IntMatrix& v, double t);

/// Squared radius in the original metric containing every vector that can
/// reach the moving systole level before t_max.
double candidate_horizon(const GramMatrix& q, int k, double t_max);

/// Columns: a Q-basis of the span of the minimal vectors, picked from the list.
IntMatrix minimal_span_basis(const MinimalVectorSet& m);

FlowEvent first_event(const GramMatrix& q, double band = kSystoleBand);

struct StepResult {
  GramMatrix gram;
  FlowEvent event;
};

StepResult retract_step(const GramMatrix& q, double band = kSystoleBand);

RetractionTrace well_rounded_retract(const GramMatrix& q);

}  // namespace wrlat
