#pragma once

// Exact linear feasibility over the rationals via phase-1 simplex with
// Bland's rule (anti-cycling, deterministic). Everything here returns exact
// certificates; callers re-check them where the stakes are high.

#include "adjointkit/linalg.hpp"

namespace adjointkit {

// One x with x >= 0 and A x = b, or nullopt when the system is infeasible.
std::optional<QVec> lp_nonneg_solve(const QMat& a, const QVec& b);

// Coefficients c >= 0, sum c = 1 with sum c_i pts_i = x, or nullopt when x
// lies outside the convex hull of pts. Order of c matches pts.
std::optional<QVec> convex_combination(const QVec& x, const QMat& pts);

// Coefficients c >= 0 with sum c_i gens_i = x, or nullopt when x lies
// outside the cone generated by gens.
std::optional<QVec> cone_combination(const QVec& x, const QMat& gens);

// A functional w with w . g >= 1 for every generator, or nullopt when the
// cone is not pointed (then no such w exists; 0 or a line spoils it).
std::optional<QVec> positive_functional(const QMat& gens);

}  // namespace adjointkit
