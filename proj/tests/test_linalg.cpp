#include <doctest.h>

#include "adjointkit/linalg.hpp"

using namespace adjointkit;

namespace {

QMat qmat(std::initializer_list<std::initializer_list<long long>> rows) {
  QMat m;
  for (const auto& r : rows) m.push_back(qvec(r));
  return m;
}

}  // namespace

TEST_CASE("vector helpers") {
  CHECK(dot(qvec({1, 2, 3}), qvec({4, 5, 6})) == Rat(32));
  CHECK(vadd(qvec({1, 2}), qvec({3, 4})) == qvec({4, 6}));
  CHECK(vsub(qvec({1, 2}), qvec({3, 4})) == qvec({-2, -2}));
  CHECK(vscale(Rat(1, 2), qvec({2, 4})) == qvec({1, 2}));
  CHECK(is_zero_vec(qvec({0, 0})));
  CHECK_FALSE(is_zero_vec(qvec({0, 1})));
  CHECK(lex_less(qvec({1, 2}), qvec({1, 3})));
  CHECK_FALSE(lex_less(qvec({1, 3}), qvec({1, 2})));
}

TEST_CASE("matrix products") {
  QMat a = qmat({{1, 2}, {3, 4}});
  CHECK(mat_mul(a, identity(2)) == a);
  CHECK(transpose(a) == qmat({{1, 3}, {2, 4}}));
  CHECK(mat_vec(a, qvec({1, 1})) == qvec({3, 7}));
  CHECK(mat_mul(a, qmat({{0, 1}, {1, 0}})) == qmat({{2, 1}, {4, 3}}));
}

TEST_CASE("rank and rref pivots") {
  CHECK(rank(qmat({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(qmat({{1, 0}, {0, 1}})) == 2);
  CHECK(rank(QMat{}) == 0);
  QMat m = qmat({{0, 1, 1}, {1, 0, 1}});
  auto piv = rref(m);
  CHECK(piv == std::vector<int>{0, 1});
  CHECK(m == qmat({{1, 0, 1}, {0, 1, 1}}));
}

TEST_CASE("solve returns a particular solution or detects inconsistency") {
  // Unique solution.
  auto x = solve(qmat({{1, 1}, {1, -1}}), qvec({3, 1}));
  REQUIRE(x.has_value());
  CHECK(*x == qvec({2, 1}));
  // Underdetermined: any exact solution is acceptable; re-check residual.
  QMat a = qmat({{1, 1, 1}});
  auto y = solve(a, qvec({5}));
  REQUIRE(y.has_value());
  CHECK(mat_vec(a, *y) == qvec({5}));
  // Inconsistent.
  CHECK_FALSE(solve(qmat({{1, 1}, {1, 1}}), qvec({0, 1})).has_value());
  // Overdetermined but consistent.
  auto z = solve(qmat({{1, 0}, {0, 1}, {1, 1}}), qvec({1, 2, 3}));
  REQUIRE(z.has_value());
  CHECK(*z == qvec({1, 2}));
}

TEST_CASE("nullspace spans the kernel") {
  QMat a = qmat({{1, 1, 1}});
  QMat ns = nullspace(a);
  REQUIRE(ns.size() == 2);
  for (const QVec& v : ns) CHECK(mat_vec(a, v) == qvec({0}));
  CHECK(rank(ns) == 2);
  CHECK(nullspace(identity(3)).empty());
}

TEST_CASE("inverse round-trips and rejects singular input") {
  QMat a = qmat({{2, 1}, {1, 1}});
  auto inv = inverse(a);
  REQUIRE(inv.has_value());
  CHECK(*inv == qmat({{1, -1}, {-1, 2}}));
  CHECK(mat_mul(a, *inv) == identity(2));
  CHECK_FALSE(inverse(qmat({{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("affine_dim measures the affine hull") {
  CHECK(affine_dim(QMat{}) == -1);
  CHECK(affine_dim(qmat({{3, 4}})) == 0);
  CHECK(affine_dim(qmat({{0, 0}, {1, 1}})) == 1);
  CHECK(affine_dim(qmat({{0, 0}, {1, 1}, {2, 2}})) == 1);
  CHECK(affine_dim(qmat({{0, 0}, {0, 1}, {1, 0}, {1, 1}})) == 2);
}

TEST_CASE("primitive rescales to coprime integers") {
  CHECK(primitive({Rat(2, 3), Rat(-4, 3)}) == qvec({1, -2}));
  CHECK(primitive(qvec({-2, 4})) == qvec({1, -2}));
  CHECK(primitive(qvec({0, 0})) == qvec({0, 0}));
  CHECK(primitive_oriented(qvec({-2, 4})) == qvec({-1, 2}));
  CHECK(primitive_oriented({Rat(0), Rat(5, 2)}) == qvec({0, 1}));
}
