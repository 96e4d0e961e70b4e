#pragma once

// Numerical model of a smooth projective surface: a fixed basis of tracked
// curve classes, their exact intersection matrix, and generator lists for
// the pseudoeffective cone and the curve side. Divisors are coefficient
// vectors over the tracked classes.

#include "adjointkit/polytope.hpp"
#include "adjointkit/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace adjointkit {

// Thrown when computed data contradicts the structural expectations of an
// operation (as opposed to malformed input, which throws
// std::invalid_argument).
struct inconsistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalSurface {
  int r = 0;
  std::vector<std::string> curves;  // names of the tracked classes
  QMat q;                           // r x r symmetric intersection matrix
  QVec k;                           // canonical divisor coefficients
  QMat effective;                   // rows generate the pseudoeffective cone
  QMat mori;                        // rows generate the curve cone (nef test)
};

void validate_surface(const NumericalSurface& s);

Rat intersect(const NumericalSurface& s, const QVec& d, const QVec& e);
bool is_nef(const NumericalSurface& s, const QVec& d);
bool is_pseff(const NumericalSurface& s, const QVec& d);

struct ZariskiResult {
  QVec p;                    // nef part
  QVec n;                    // negative part, p + n == input
  std::vector<int> support;  // indices with positive coefficient in n
  QVec nu;                   // those coefficients, aligned with support
};

// Zariski decomposition of a pseudoeffective divisor by iterative support
// growth: each round solves the Gram system on the current support (checked
// negative definite) and adds the first curve the scan order finds with
// p . c < 0. Scan order defaults to 0..r-1 and never changes the result,
// only the route.
ZariskiResult zariski(const NumericalSurface& s, const QVec& d,
                      const std::vector<int>& scan_order = {});

struct ContractionResult {
  NumericalSurface surface;
  QMat pushforward;  // (r-1) x r, deletes the contracted coordinate
  QMat pullback;     // r x (r-1), numerical pullback of coefficient vectors
};

// Contracts the j-th tracked class (must have negative self-intersection).
// Target intersection numbers come from the orthogonal projection along the
// contracted class.
ContractionResult contract(const NumericalSurface& s, int j);

struct MMPStep {
  int index = 0;  // index at the time of contraction
  int orig = 0;   // index in the starting surface
  QMat pushforward;
};

struct MMPResult {
  std::vector<MMPStep> steps;
  std::string outcome;  // "minimal-model" or "fiber-type"
  NumericalSurface final_surface;
  QVec final_delta;
  std::vector<int> orig_index;  // final coordinate -> starting coordinate
};

// Runs the (k + delta)-MMP, always contracting the lowest-index curve with
// negative self-intersection and negative adjoint degree.
MMPResult run_mmp(const NumericalSurface& s, const QVec& delta);

// Region of the boundary chart where k + delta(t) is pseudoeffective, cut
// out of `chart` (a polytope in R^{n-1} for n boundary rows). delta(t) =
// deltas[n-1] + sum t_i (deltas[i] - deltas[n-1]).
Polytope pseff_region(const NumericalSurface& s, const QMat& deltas, const Polytope& chart);

struct Chamber {
  Polytope cell;
  std::vector<int> contracted;  // starting-surface indices, ascending
};

// Chamber decomposition of the pseudoeffective region: inside each closed
// chamber the adjoint MMP contracts the same curves and ends on a minimal
// model. Chambers with equal contraction sets are merged when their union
// is convex. Throws inconsistency_error if a fiber-type outcome or a
// non-pseudoeffective vertex shows up inside the region.
std::vector<Chamber> wlc_decomposition(const NumericalSurface& s, const QMat& deltas,
                                       const Polytope& chart);

// Smooth complete toric surface from counterclockwise primitive rays
// (det(v_i, v_{i+1}) == 1 cyclically). The canonical coefficients are taken
// as given, so non-standard instances can be modeled on the same fan.
NumericalSurface toric_surface(const std::vector<ZVec>& rays, const QVec& k);

// Section polygon {u : <u, v_j> + d_j >= 0} of a divisor on the fan.
Polytope toric_polygon(const std::vector<ZVec>& rays, const QVec& d);

}  // namespace adjointkit
