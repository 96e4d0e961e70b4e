#pragma once

// Exact convex polytopes with synchronized vertex and half-space
// representations. Conventions:
//   - HalfSpace {a, b} is the set {x : a.x + b >= 0};
//   - vertices are the true extreme points, lexicographically sorted;
//   - facets are inequalities relative to the affine hull, equalities cut
//     out the affine hull itself; hrep() flattens each equality into the
//     pair (a.x + b >= 0, -a.x - b >= 0);
//   - all normals are scaled to coprime integer entries (equalities with
//     positive leading entry), and both lists are sorted, so equal
//     polytopes have identical representations.
// An empty polytope has dim() == -1 and no vertices.

#include "adjointkit/linalg.hpp"

namespace adjointkit {

struct HalfSpace {
  QVec normal;
  Rat offset;

  Rat eval(const QVec& x) const { return dot(normal, x) + offset; }
  HalfSpace flipped() const {
    QVec n(normal);
    for (Rat& c : n) c = -c;
    return {std::move(n), -offset};
  }
};

bool operator==(const HalfSpace& a, const HalfSpace& b);
bool operator<(const HalfSpace& a, const HalfSpace& b);

class Polytope {
 public:
  Polytope() = default;
  explicit Polytope(int ambient) : ambient_(ambient) {}

  int ambient() const { return ambient_; }
  int dim() const { return dim_; }
  bool empty() const { return dim_ < 0; }
  const QMat& vertices() const { return verts_; }
  const std::vector<HalfSpace>& facets() const { return facets_; }
  const std::vector<HalfSpace>& equalities() const { return eqs_; }

  // Facets followed by each equality as a (>=, <=) pair.
  std::vector<HalfSpace> hrep() const;

  bool contains(const QVec& x) const;
  // x satisfies every equality and every facet strictly.
  bool contains_in_relative_interior(const QVec& x) const;

  // Arithmetic mean of the vertex set; relative-interior point.
  QVec barycenter() const;

  friend Polytope convex_hull(int ambient, const QMat& pts);

 private:
  int ambient_ = 0;
  int dim_ = -1;
  QMat verts_;
  std::vector<HalfSpace> facets_;
  std::vector<HalfSpace> eqs_;
};

bool operator==(const Polytope& a, const Polytope& b);

// Hull of a finite point set: filters non-extreme points, synthesizes the
// facet and equality lists.
Polytope convex_hull(int ambient, const QMat& pts);

// {x : a.x + b >= 0 for each given half-space}; must be bounded, otherwise
// throws std::invalid_argument (this library has no unbounded polyhedra).
Polytope from_halfspaces(int ambient, const std::vector<HalfSpace>& hs);

Polytope intersect_halfspace(const Polytope& p, const HalfSpace& h);
Polytope intersect(const Polytope& p, const Polytope& q);

// All faces of dimension k, lexicographically ordered by vertex matrix.
// k == dim(p) gives {p}; the empty face is never listed.
std::vector<Polytope> faces(const Polytope& p, int k);

// Whether f is a face of p (the empty polytope and p itself count).
// Throws std::invalid_argument if f is not even a subset of p.
bool is_face_of(const Polytope& f, const Polytope& p);

// Closed pieces of C minus the union of the parts' relative interiors:
// full-dimensional (relative to C) closed polytopes whose union is the
// closure of C \ U(parts). Empty result means the parts cover C up to
// measure zero.
std::vector<Polytope> subtract_cover(const Polytope& c, const std::vector<Polytope>& parts);

// Exact covering test: every part is contained in C and the parts' union
// is all of C.
bool covers_exactly(const Polytope& c, const std::vector<Polytope>& parts);

// H-description {inequalities, equalities through the origin} of the cone
// generated by gens (not necessarily pointed). Membership in the cone is
// then: all inequality dots >= 0 and all equality dots == 0.
struct ConeHRep {
  QMat ineqs;
  QMat eqs;
  bool contains(const QVec& x) const;
};
ConeHRep cone_hrep(int ambient, const QMat& gens);

}  // namespace adjointkit
