#include <doctest.h>

#include <algorithm>

#include "adjointkit/polytope.hpp"

using namespace adjointkit;

namespace {

QMat qmat(std::initializer_list<std::initializer_list<long long>> rows) {
  QMat m;
  for (const auto& r : rows) m.push_back(qvec(r));
  return m;
}

Polytope unit_square() { return convex_hull(2, qmat({{0, 0}, {0, 1}, {1, 0}, {1, 1}})); }

}  // namespace

TEST_CASE("convex_hull filters interior and duplicate points") {
  Polytope p = convex_hull(2, qmat({{0, 0}, {1, 1}, {0, 1}, {1, 0}, {0, 0}, {0, 0}}));
  QVec center{Rat(1, 2), Rat(1, 2)};
  Polytope q = convex_hull(2, {qvec({0, 0}), qvec({0, 1}), qvec({1, 0}), qvec({1, 1}), center});
  CHECK(p == q);
  CHECK(p.dim() == 2);
  CHECK(p.vertices() == qmat({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK(p.facets().size() == 4);
  CHECK(p.equalities().empty());
}

TEST_CASE("containment distinguishes boundary from relative interior") {
  Polytope p = unit_square();
  CHECK(p.contains({Rat(1, 2), Rat(1, 2)}));
  CHECK(p.contains(qvec({0, 0})));
  CHECK_FALSE(p.contains(qvec({2, 0})));
  CHECK(p.contains_in_relative_interior({Rat(1, 2), Rat(1, 2)}));
  CHECK_FALSE(p.contains_in_relative_interior({Rat(0), Rat(1, 2)}));
  CHECK(p.barycenter() == QVec{Rat(1, 2), Rat(1, 2)});
}

TEST_CASE("lower-dimensional hulls carry equalities") {
  Polytope seg = convex_hull(2, qmat({{0, 0}, {2, 2}, {1, 1}}));
  CHECK(seg.dim() == 1);
  CHECK(seg.vertices() == qmat({{0, 0}, {2, 2}}));
  REQUIRE(seg.equalities().size() == 1);
  CHECK(seg.contains(qvec({1, 1})));
  CHECK_FALSE(seg.contains(qvec({1, 0})));
  // hrep flattens the equality into an opposite pair.
  CHECK(seg.hrep().size() == seg.facets().size() + 2);
  Polytope pt = convex_hull(2, qmat({{3, 4}}));
  CHECK(pt.dim() == 0);
  CHECK(pt.contains(qvec({3, 4})));
  Polytope none = convex_hull(2, QMat{});
  CHECK(none.empty());
  CHECK(none.dim() == -1);
}

TEST_CASE("from_halfspaces inverts the facet description") {
  std::vector<HalfSpace> hs = {{qvec({1, 0}), Rat(0)},
                               {qvec({0, 1}), Rat(0)},
                               {qvec({-1, 0}), Rat(1)},
                               {qvec({0, -1}), Rat(1)}};
  CHECK(from_halfspaces(2, hs) == unit_square());
  // Redundant constraints change nothing.
  hs.push_back({qvec({1, 1}), Rat(5)});
  CHECK(from_halfspaces(2, hs) == unit_square());
  // Round-trip through hrep.
  CHECK(from_halfspaces(2, unit_square().hrep()) == unit_square());
  // Infeasible systems give the empty polytope.
  std::vector<HalfSpace> empty_hs = {{qvec({1, 0}), Rat(-1)}, {qvec({-1, 0}), Rat(0)},
                                     {qvec({0, 1}), Rat(0)}, {qvec({0, -1}), Rat(1)}};
  CHECK(from_halfspaces(2, empty_hs).empty());
  // Unbounded regions are rejected.
  CHECK_THROWS_AS(from_halfspaces(2, {{qvec({1, 0}), Rat(0)}}), std::invalid_argument);
}

TEST_CASE("halfspace intersection cuts exactly") {
  Polytope tri = intersect_halfspace(unit_square(), {qvec({-1, -1}), Rat(1)});
  CHECK(tri.vertices() == qmat({{0, 0}, {0, 1}, {1, 0}}));
  Polytope shifted = convex_hull(
      2, {QVec{Rat(1, 2), Rat(1, 2)}, QVec{Rat(1, 2), Rat(3, 2)}, QVec{Rat(3, 2), Rat(1, 2)},
          QVec{Rat(3, 2), Rat(3, 2)}});
  Polytope overlap = intersect(unit_square(), shifted);
  CHECK(overlap ==
        convex_hull(2, {QVec{Rat(1, 2), Rat(1, 2)}, QVec{Rat(1, 2), Rat(1)},
                        QVec{Rat(1), Rat(1, 2)}, QVec{Rat(1), Rat(1)}}));
  // Disjoint intersection is empty.
  CHECK(intersect_halfspace(unit_square(), {qvec({1, 0}), Rat(-2)}).empty());
}

TEST_CASE("faces enumerate by dimension in lexicographic order") {
  Polytope p = unit_square();
  auto verts = faces(p, 0);
  REQUIRE(verts.size() == 4);
  CHECK(verts[0].vertices() == qmat({{0, 0}}));
  CHECK(verts[3].vertices() == qmat({{1, 1}}));
  auto edges = faces(p, 1);
  REQUIRE(edges.size() == 4);
  for (const Polytope& e : edges) {
    CHECK(e.dim() == 1);
    CHECK(is_face_of(e, p));
  }
  auto top = faces(p, 2);
  REQUIRE(top.size() == 1);
  CHECK(top[0] == p);
  // A diagonal is a subset but not a face.
  Polytope diag = convex_hull(2, qmat({{0, 0}, {1, 1}}));
  CHECK_FALSE(is_face_of(diag, p));
  // Not even a subset: rejected.
  Polytope out = convex_hull(2, qmat({{0, 0}, {3, 0}}));
  CHECK_THROWS_AS(is_face_of(out, p), std::invalid_argument);
}

TEST_CASE("covers_exactly accepts exact covers and rejects gaps") {
  Polytope p = unit_square();
  Polytope lower = convex_hull(2, qmat({{0, 0}, {0, 1}, {1, 0}}));
  Polytope upper = convex_hull(2, qmat({{0, 1}, {1, 0}, {1, 1}}));
  CHECK(covers_exactly(p, {lower, upper}));
  CHECK_FALSE(covers_exactly(p, {lower}));
  // Overlapping parts still cover.
  CHECK(covers_exactly(p, {lower, upper, p}));
  // A part poking outside fails.
  Polytope big = convex_hull(2, qmat({{0, 0}, {2, 0}, {0, 1}, {2, 1}}));
  CHECK_FALSE(covers_exactly(p, {big}));
}

TEST_CASE("subtract_cover returns the closed complement pieces") {
  Polytope p = unit_square();
  Polytope quadrant =
      convex_hull(2, {qvec({0, 0}), QVec{Rat(1, 2), Rat(0)}, QVec{Rat(0), Rat(1, 2)},
                      QVec{Rat(1, 2), Rat(1, 2)}});
  auto rest = subtract_cover(p, {quadrant});
  CHECK_FALSE(rest.empty());
  std::vector<Polytope> all(rest);
  all.push_back(quadrant);
  CHECK(covers_exactly(p, all));
  // Subtracting an exact cover leaves nothing.
  Polytope lower = convex_hull(2, qmat({{0, 0}, {0, 1}, {1, 0}}));
  Polytope upper = convex_hull(2, qmat({{0, 1}, {1, 0}, {1, 1}}));
  CHECK(subtract_cover(p, {lower, upper}).empty());
}

TEST_CASE("cone_hrep describes pointed cones, lines, and the full space") {
  ConeHRep c = cone_hrep(2, qmat({{1, 0}, {1, 1}}));
  CHECK(c.contains(qvec({2, 1})));
  CHECK(c.contains(qvec({0, 0})));
  CHECK(c.contains(qvec({1, 1})));
  CHECK_FALSE(c.contains(qvec({0, 1})));
  CHECK_FALSE(c.contains(qvec({-1, 0})));
  ConeHRep line = cone_hrep(2, qmat({{1, 0}, {-1, 0}}));
  CHECK(line.contains(qvec({5, 0})));
  CHECK_FALSE(line.contains(qvec({0, 1})));
  ConeHRep all = cone_hrep(2, qmat({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
  CHECK(all.contains(qvec({-7, 9})));
}
