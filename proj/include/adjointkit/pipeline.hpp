#pragma once

// End-to-end driver: given a toric-modeled surface and a tuple of boundary
// divisors, produce a verified generating set of the multigraded adjoint
// ring up to a degree bound. Tuples are reduced along convex relations
// (dropping a boundary that is a convex combination of the others, or
// inserting a common point of all facets of an affinely dependent tuple),
// leaves are handled by chamber decomposition plus an aligned simplicial
// cover, and generator sets flow back up with exhaustive re-verification at
// every step.

#include "adjointkit/graded_monoid.hpp"
#include "adjointkit/polytope.hpp"
#include "adjointkit/surface.hpp"

#include <functional>
#include <string>
#include <vector>

namespace adjointkit {

struct AdjointInstance {
  NumericalSurface surface;
  std::vector<ZVec> rays;  // toric model: fan rays aligned with the tracked classes
  QMat deltas;             // boundary rows, coefficients in [0, 1]
};

// Checks arity, boundary coefficient range, and that the intersection
// matrix matches the fan (the section-count oracle depends on it).
void validate_instance(const AdjointInstance& inst);

// Direct section enumeration of the adjoint ring: all elements
// (m; u) with |m|_1 <= bound and u a lattice point of the section polygon
// of sum m_i (k + delta_i). This is the independent oracle every pipeline
// product is compared against.
std::vector<MonoidElem> adjoint_slice(const AdjointInstance& inst, const QMat& deltas,
                                      long long bound);

using TraceFn = std::function<void(const std::string& line)>;

// Generator set for one tuple without any reduction: chamber decomposition
// of the pseudoeffective region, aligned simplicial cover, per-vertex
// section monoids on the contracted models, then transfer and extension
// against the direct enumeration. Throws inconsistency_error when any
// verification fails.
GeneratorSet process_leaf(const AdjointInstance& inst, const QMat& deltas, long long bound,
                          const TraceFn& trace = nullptr);

struct PipelineResult {
  GeneratorSet gens;
  bool verified = false;
  std::vector<std::string> notes;
};

// Full reduction pipeline over the instance's boundary tuple.
PipelineResult run_pipeline(const AdjointInstance& inst, long long bound,
                            const TraceFn& trace = nullptr);

// Re-checks a generator set against the direct enumeration.
GenerationReport verify_generators(const AdjointInstance& inst, const std::vector<MonoidElem>& gens,
                                   long long bound);

struct TraceStepCheck {
  int index = 0;      // line number in the trace, 0-based
  std::string event;  // recorded event tag
  bool ok = false;
  std::string note;
};

struct TraceCheck {
  bool ok = true;
  std::vector<TraceStepCheck> steps;
};

// Replays a recorded trace: the first line carries the instance and bound,
// the rest must match a fresh deterministic run line for line. An empty
// trace passes vacuously. Malformed lines throw std::invalid_argument.
TraceCheck verify_trace(const std::vector<std::string>& lines);

}  // namespace adjointkit
