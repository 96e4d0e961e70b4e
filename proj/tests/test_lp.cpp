#include <doctest.h>

#include "adjointkit/lp.hpp"

using namespace adjointkit;

namespace {

QMat qmat(std::initializer_list<std::initializer_list<long long>> rows) {
  QMat m;
  for (const auto& r : rows) m.push_back(qvec(r));
  return m;
}

}  // namespace

TEST_CASE("lp_nonneg_solve returns an exact feasible point") {
  QMat a = qmat({{1, 1, 1}, {0, 1, 2}});
  QVec b = qvec({4, 3});
  auto x = lp_nonneg_solve(a, b);
  REQUIRE(x.has_value());
  REQUIRE(x->size() == 3);
  for (const Rat& c : *x) CHECK(c >= Rat(0));
  CHECK(mat_vec(a, *x) == b);
}

TEST_CASE("lp_nonneg_solve detects infeasibility") {
  CHECK_FALSE(lp_nonneg_solve(qmat({{1, 1}}), qvec({-1})).has_value());
  CHECK_FALSE(lp_nonneg_solve(qmat({{1, 0}, {1, 0}}), qvec({1, 2})).has_value());
  // Zero right-hand side is always feasible at the origin.
  auto z = lp_nonneg_solve(qmat({{1, -1}}), qvec({0}));
  REQUIRE(z.has_value());
  CHECK(mat_vec(qmat({{1, -1}}), *z) == qvec({0}));
}

TEST_CASE("convex_combination certifies hull membership") {
  QMat square = qmat({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  QVec center{Rat(1, 2), Rat(1, 2)};
  auto c = convex_combination(center, square);
  REQUIRE(c.has_value());
  Rat total;
  QVec recomb{Rat(0), Rat(0)};
  for (size_t i = 0; i < c->size(); ++i) {
    CHECK((*c)[i] >= Rat(0));
    total += (*c)[i];
    recomb = vadd(recomb, vscale((*c)[i], square[i]));
  }
  CHECK(total == Rat(1));
  CHECK(recomb == center);
  // A vertex is its own combination.
  CHECK(convex_combination(qvec({1, 1}), square).has_value());
  // Outside the hull.
  CHECK_FALSE(convex_combination(qvec({2, 0}), square).has_value());
  CHECK_FALSE(convex_combination({Rat(1, 2), Rat(-1, 10)}, square).has_value());
}

TEST_CASE("cone_combination certifies cone membership") {
  QMat gens = qmat({{1, 0}, {1, 1}});
  auto c = cone_combination(qvec({3, 1}), gens);
  REQUIRE(c.has_value());
  QVec recomb{Rat(0), Rat(0)};
  for (size_t i = 0; i < c->size(); ++i) {
    CHECK((*c)[i] >= Rat(0));
    recomb = vadd(recomb, vscale((*c)[i], gens[i]));
  }
  CHECK(recomb == qvec({3, 1}));
  // The origin needs only zero coefficients.
  CHECK(cone_combination(qvec({0, 0}), gens).has_value());
  // Outside: the cone is 0 <= y <= x.
  CHECK_FALSE(cone_combination(qvec({0, 1}), gens).has_value());
  CHECK_FALSE(cone_combination(qvec({-1, 0}), gens).has_value());
}

TEST_CASE("positive_functional separates pointed cones") {
  QMat gens = qmat({{1, 0}, {0, 1}, {1, 1}});
  auto w = positive_functional(gens);
  REQUIRE(w.has_value());
  for (const QVec& g : gens) CHECK(dot(*w, g) >= Rat(1));
  // A line through the origin is not pointed.
  CHECK_FALSE(positive_functional(qmat({{1, 0}, {-1, 0}})).has_value());
  // The zero generator can never have positive pairing.
  CHECK_FALSE(positive_functional(qmat({{0, 0}})).has_value());
}
