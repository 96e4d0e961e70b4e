#pragma once

// Simplex covers of polytopes that respect a distinguished subpolytope:
// every output simplex meets it in a common face. Also the common-point
// construction: a single point lying in all the "delete one vertex" hulls
// of a polytope with at least n+2 vertices, with exact convex-combination
// certificates.

#include "adjointkit/polytope.hpp"

#include <optional>

namespace adjointkit {

// Full-dimensional simplex given by its affinely independent vertices,
// lexicographically sorted.
struct Simplex {
  QMat verts;
};

struct CommonPointCertificate {
  QVec point;
  // memberships[i]: convex coefficients expressing point over the vertices
  // of hull(V minus v_i), listed in that polytope's vertex order.
  std::vector<QVec> memberships;
};

// For a full-dimensional polytope with m >= n+2 vertices, a point contained
// in every hull obtained by deleting one vertex. Throws
// std::invalid_argument when dim < n or m <= n+1. Certificates are
// re-verified exactly before returning.
CommonPointCertificate common_point(const Polytope& c);

struct AlignedSimplex {
  Simplex simplex;
  // The face simplex ∩ D; empty when the simplex misses D.
  Polytope face;
  // Index of a part containing the face; meaningless when face is empty.
  std::optional<int> part;
};

struct SimplexCover {
  std::vector<AlignedSimplex> simplices;
};

// Cones every simplex of a cover of some face to the apex; alignment data
// carries over verbatim. Throws if the apex is affinely dependent on any
// simplex.
SimplexCover fan_triangulate(const QVec& apex, const SimplexCover& base);

// Plain triangulation (no alignment): fans from the lex-least vertex.
std::vector<Simplex> triangulate(const Polytope& p);

// Simplex cover of C such that each simplex meets D = union(parts) in a
// face, and that face lies inside a single part. Requires each part to be
// contained in C and the union to be convex; the union being a polytope is
// the caller's responsibility and is caught by verify_cover otherwise.
SimplexCover cover_respecting(const Polytope& c, const std::vector<Polytope>& parts);

// Exact re-verification: simplices are full-dimensional and inside C, their
// union is exactly C, and each alignment face equals simplex ∩ part and is
// a face of the simplex containing every simplex ∩ part_j. Returns a
// human-readable failure, or nullopt when the cover checks out.
std::optional<std::string> verify_cover(const Polytope& c, const std::vector<Polytope>& parts,
                                        const SimplexCover& cover);

}  // namespace adjointkit
