#pragma once

// Dense exact linear algebra over Rat: Gauss-Jordan elimination and the
// standard derived queries (rank, solve, nullspace, inverse). Matrices are
// row-major vectors of rows; all rows of a matrix must share one length.

#include "adjointkit/rational.hpp"

#include <optional>

namespace adjointkit {

QVec qvec(std::initializer_list<long long> xs);

// Lexicographic order on rational vectors; shorter prefixes first.
bool lex_less(const QVec& a, const QVec& b);

Rat dot(const QVec& a, const QVec& b);
QVec vadd(const QVec& a, const QVec& b);
QVec vsub(const QVec& a, const QVec& b);
QVec vscale(const Rat& c, const QVec& a);
bool is_zero_vec(const QVec& a);

QMat identity(int n);
QMat transpose(const QMat& m);
QMat mat_mul(const QMat& a, const QMat& b);
QVec mat_vec(const QMat& a, const QVec& x);

// Reduces m to reduced row-echelon form in place; returns the pivot columns
// in increasing order. Column choice is leftmost-first, row choice is the
// first row with a nonzero entry, so the result is input-deterministic.
std::vector<int> rref(QMat& m);

int rank(QMat m);

// One solution of A x = b, or nullopt when inconsistent.
std::optional<QVec> solve(const QMat& a, const QVec& b);

// Basis of {x : A x = 0}, one row per basis vector, in the canonical
// free-column order produced by rref.
QMat nullspace(const QMat& a);

std::optional<QMat> inverse(const QMat& a);

// Affine rank of a point set minus one, i.e. dim of the affine hull;
// -1 for the empty set.
int affine_dim(const QMat& pts);

// Scales v so entries are coprime integers and the first nonzero entry is
// positive; the zero vector stays zero. Canonical representative of a line.
QVec primitive(const QVec& v);

// Same scaling but by a positive factor only, so the direction is kept.
QVec primitive_oriented(const QVec& v);

}  // namespace adjointkit
