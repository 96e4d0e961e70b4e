#include <doctest.h>

#include <algorithm>

#include "adjointkit/lp.hpp"
#include "adjointkit/simplex_cover.hpp"

using namespace adjointkit;

namespace {

QMat qmat(std::initializer_list<std::initializer_list<long long>> rows) {
  QMat m;
  for (const auto& r : rows) m.push_back(qvec(r));
  return m;
}

Polytope unit_square() { return convex_hull(2, qmat({{0, 0}, {0, 1}, {1, 0}, {1, 1}})); }

}  // namespace

TEST_CASE("triangulate splits a polytope into vertex simplices") {
  Polytope p = unit_square();
  auto tris = triangulate(p);
  REQUIRE(tris.size() == 2);
  std::vector<Polytope> hulls;
  for (const Simplex& s : tris) {
    REQUIRE(s.verts.size() == 3);
    // Only polytope vertices appear, no new points.
    for (const QVec& v : s.verts)
      CHECK(std::find(p.vertices().begin(), p.vertices().end(), v) != p.vertices().end());
    hulls.push_back(convex_hull(2, s.verts));
    CHECK(hulls.back().dim() == 2);
  }
  CHECK(covers_exactly(p, hulls));
  // A simplex triangulates to itself.
  Polytope tri = convex_hull(2, qmat({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(triangulate(tri).size() == 1);
}

TEST_CASE("common_point lies in every vertex-deleted hull") {
  Polytope p = unit_square();
  CommonPointCertificate cert = common_point(p);
  REQUIRE(cert.memberships.size() == 4);
  const QMat& vs = p.vertices();
  for (size_t i = 0; i < vs.size(); ++i) {
    QMat rest;
    for (size_t j = 0; j < vs.size(); ++j)
      if (j != i) rest.push_back(vs[j]);
    Polytope hull = convex_hull(2, rest);
    CHECK(hull.contains(cert.point));
    // The stored membership certificate recombines to the point exactly.
    const QVec& coeffs = cert.memberships[i];
    REQUIRE(coeffs.size() == hull.vertices().size());
    QVec recomb(2, Rat(0));
    Rat total;
    for (size_t j = 0; j < coeffs.size(); ++j) {
      CHECK(coeffs[j] >= Rat(0));
      total += coeffs[j];
      recomb = vadd(recomb, vscale(coeffs[j], hull.vertices()[j]));
    }
    CHECK(total == Rat(1));
    CHECK(recomb == cert.point);
  }
}

TEST_CASE("common_point rejects simplices and degenerate input") {
  CHECK_THROWS_AS(common_point(convex_hull(2, qmat({{0, 0}, {1, 0}, {0, 1}}))),
                  std::invalid_argument);
  CHECK_THROWS_AS(common_point(convex_hull(2, qmat({{0, 0}, {1, 1}}))), std::invalid_argument);
}

TEST_CASE("common_point handles polytopes with many vertices") {
  // Hexagon: 6 vertices in the plane, m = n + 4.
  Polytope hex = convex_hull(
      2, qmat({{2, 0}, {1, 2}, {-1, 2}, {-2, 0}, {-1, -2}, {1, -2}}));
  CommonPointCertificate cert = common_point(hex);
  REQUIRE(cert.memberships.size() == 6);
  const QMat& vs = hex.vertices();
  for (size_t i = 0; i < vs.size(); ++i) {
    QMat rest;
    for (size_t j = 0; j < vs.size(); ++j)
      if (j != i) rest.push_back(vs[j]);
    CHECK(convex_hull(2, rest).contains(cert.point));
  }
}

TEST_CASE("cover_respecting aligns simplices with the distinguished parts") {
  Polytope c = unit_square();
  Polytope left = convex_hull(2, {qvec({0, 0}), qvec({0, 1}), QVec{Rat(1, 2), Rat(0)},
                                  QVec{Rat(1, 2), Rat(1)}});
  Polytope right = convex_hull(2, {QVec{Rat(1, 2), Rat(0)}, QVec{Rat(1, 2), Rat(1)},
                                   qvec({1, 0}), qvec({1, 1})});
  SimplexCover cover = cover_respecting(c, {left, right});
  CHECK_FALSE(cover.simplices.empty());
  CHECK_FALSE(verify_cover(c, {left, right}, cover).has_value());
  // Independent re-checks of the alignment data.
  for (const AlignedSimplex& as : cover.simplices) {
    Polytope hull = convex_hull(2, as.simplex.verts);
    CHECK(hull.dim() == 2);
    if (!as.face.empty()) {
      REQUIRE(as.part.has_value());
      CHECK(is_face_of(as.face, hull));
    }
  }
}

TEST_CASE("cover_respecting handles a lower-dimensional part") {
  Polytope c = unit_square();
  Polytope edge = convex_hull(2, qmat({{0, 0}, {0, 1}}));
  SimplexCover cover = cover_respecting(c, {edge});
  CHECK(cover.simplices.size() >= 2);
  CHECK_FALSE(verify_cover(c, {edge}, cover).has_value());
}

TEST_CASE("verify_cover flags a broken cover") {
  Polytope c = unit_square();
  Polytope lower = convex_hull(2, qmat({{0, 0}, {0, 1}, {1, 0}}));
  SimplexCover partial;
  partial.simplices.push_back({Simplex{lower.vertices()}, Polytope(2), std::nullopt});
  auto msg = verify_cover(c, {}, partial);
  REQUIRE(msg.has_value());
  CHECK_FALSE(msg->empty());
}

TEST_CASE("fan_triangulate cones a cover to an apex") {
  // Base: the bottom edge of the square, covered by one 1-simplex.
  SimplexCover base;
  base.simplices.push_back({Simplex{qmat({{0, 0}, {1, 0}})}, Polytope(2), std::nullopt});
  QVec apex = qvec({0, 1});
  SimplexCover coned = fan_triangulate(apex, base);
  REQUIRE(coned.simplices.size() == 1);
  CHECK(coned.simplices[0].simplex.verts.size() == 3);
  Polytope hull = convex_hull(2, coned.simplices[0].simplex.verts);
  CHECK(hull == convex_hull(2, qmat({{0, 0}, {1, 0}, {0, 1}})));
  // An apex on the base line is affinely dependent: rejected.
  CHECK_THROWS_AS(fan_triangulate(qvec({2, 0}), base), std::invalid_argument);
}
