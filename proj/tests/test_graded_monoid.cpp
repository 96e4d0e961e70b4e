#include <doctest.h>

#include <algorithm>

#include "adjointkit/graded_monoid.hpp"

using namespace adjointkit;

namespace {

// Z_{>=0}-span of (1; 1) and (1; -1): all (a; b) with |b| <= a, b = a mod 2.
GradedMonoid two_gen_monoid() { return {1, 1, {{{1}, {1}}, {{1}, {-1}}}}; }

std::vector<MonoidElem> elems_of(const GeneratorSet& g) {
  std::vector<MonoidElem> out;
  for (const GenEntry& e : g.elems) out.push_back(e.elem);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("validate rejects malformed generators") {
  CHECK_NOTHROW(validate(two_gen_monoid()));
  CHECK_THROWS_AS(validate({1, 1, {{{-1}, {0}}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate({1, 1, {{{0}, {1}}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate({1, 1, {{{0}, {0}}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate({2, 0, {{{1}, {}}}}), std::invalid_argument);
}

TEST_CASE("elements_up_to enumerates the monoid slice in order") {
  auto els = elements_up_to(two_gen_monoid(), 2);
  std::vector<MonoidElem> want = {{{0}, {0}}, {{1}, {-1}}, {{1}, {1}},
                                  {{2}, {-2}}, {{2}, {0}}, {{2}, {2}}};
  CHECK(els == want);
  CHECK(elements_up_to(two_gen_monoid(), 0) == std::vector<MonoidElem>{{{0}, {0}}});
}

TEST_CASE("membership returns exact exponent certificates") {
  GradedMonoid m = two_gen_monoid();
  auto e = membership(m, {{2}, {0}});
  REQUIRE(e.has_value());
  CHECK(*e == ZVec{1, 1});
  auto f = membership(m, {{3}, {1}});
  REQUIRE(f.has_value());
  CHECK(*f == ZVec{2, 1});
  CHECK(membership(m, {{0}, {0}}).has_value());
  CHECK_FALSE(membership(m, {{1}, {0}}).has_value());
  CHECK_FALSE(membership(m, {{2}, {3}}).has_value());
}

TEST_CASE("is_generated_up_to finds exactly the unreachable elements") {
  GradedMonoid m = two_gen_monoid();
  CHECK(is_generated_up_to(m, {{{1}, {1}}, {{1}, {-1}}}, 6).ok);
  auto rep = is_generated_up_to(m, {{{1}, {1}}}, 2);
  CHECK_FALSE(rep.ok);
  std::vector<MonoidElem> want = {{{1}, {-1}}, {{2}, {-2}}, {{2}, {0}}};
  CHECK(rep.missing == want);
  // Candidates must lie in the monoid.
  CHECK_THROWS_AS(is_generated_up_to(m, {{{1}, {5}}}, 4), std::invalid_argument);
}

TEST_CASE("truncate produces the divisible-degree subring") {
  GradedMonoid t = truncate(two_gen_monoid(), 2);
  CHECK(t.n == 1);
  CHECK(t.k == 1);
  std::vector<MonoidElem> gens(t.gens);
  std::sort(gens.begin(), gens.end());
  std::vector<MonoidElem> want = {{{1}, {-2}}, {{1}, {0}}, {{1}, {2}}};
  CHECK(gens == want);
  // Reweighting by the constant vector agrees.
  GradedMonoid r = reweight(two_gen_monoid(), {2});
  std::vector<MonoidElem> rg(r.gens);
  std::sort(rg.begin(), rg.end());
  CHECK(rg == want);
  // Weight one is the identity on elements.
  GradedMonoid one = reweight(two_gen_monoid(), {1});
  CHECK(elements_up_to(one, 3) == elements_up_to(two_gen_monoid(), 3));
}

TEST_CASE("fg_equivalence_check accepts the worked truncations") {
  CHECK(fg_equivalence_check(two_gen_monoid(), {2}, 8).consistent);
  CHECK(fg_equivalence_check(two_gen_monoid(), {3}, 8).consistent);
  GradedMonoid plane{2, 0, {{{1, 0}, {}}, {{0, 1}, {}}, {{1, 1}, {}}}};
  CHECK(fg_equivalence_check(plane, {2, 3}, 8).consistent);
}

TEST_CASE("hilbert_basis on worked cones") {
  using VV = std::vector<ZVec>;
  CHECK(hilbert_basis(2, {{1, 0}, {0, 1}}) == VV{{0, 1}, {1, 0}});
  CHECK(hilbert_basis(2, {{1, 0}, {1, 2}}) == VV{{1, 0}, {1, 1}, {1, 2}});
  // Non-primitive and redundant rays are normalized away.
  CHECK(hilbert_basis(2, {{2, 0}, {0, 2}}) == VV{{0, 1}, {1, 0}});
  CHECK(hilbert_basis(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}) ==
        VV{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  // Skew cone with interior basis points.
  CHECK(hilbert_basis(2, {{3, 1}, {1, 3}}) == VV{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {3, 1}});
  // A line makes the cone unpointed.
  CHECK_THROWS_AS(hilbert_basis(2, {{1, 0}, {-1, 0}}), std::invalid_argument);
}

TEST_CASE("semiample_generators on worked polygon families") {
  // One unit square: generators are its lattice points at multidegree one.
  QMat square = {qvec({0, 0}), qvec({0, 1}), qvec({1, 0}), qvec({1, 1})};
  GeneratorSet g = semiample_generators({square});
  CHECK(g.n == 1);
  CHECK(g.k == 2);
  std::vector<MonoidElem> want = {{{1}, {0, 0}}, {{1}, {0, 1}}, {{1}, {1, 0}}, {{1}, {1, 1}}};
  CHECK(elems_of(g) == want);
  for (const GenEntry& e : g.elems) CHECK(e.provenance == "cayley");
  // Two segments of different lengths.
  QMat s1 = {qvec({0}), qvec({1})};
  QMat s2 = {qvec({0}), qvec({2})};
  GeneratorSet h = semiample_generators({s1, s2});
  CHECK(h.n == 2);
  CHECK(h.k == 1);
  std::vector<MonoidElem> hw = {{{0, 1}, {0}}, {{0, 1}, {1}}, {{0, 1}, {2}},
                                {{1, 0}, {0}}, {{1, 0}, {1}}};
  CHECK(elems_of(h) == hw);
  // A rational segment needs a deeper multiple to reach its far lattice point.
  QMat half = {qvec({0}), QVec{Rat(1, 2)}};
  GeneratorSet r = semiample_generators({half});
  std::vector<MonoidElem> rw = {{{1}, {0}}, {{2}, {1}}};
  CHECK(elems_of(r) == rw);
}

TEST_CASE("augment builds the auxiliary-coordinate monoid") {
  GradedMonoid m{1, 1, {{{1}, {1}}}};
  GradedMonoid aug = augment(m, {0});
  CHECK(aug.n == 2);
  CHECK(aug.k == 1);
  std::vector<MonoidElem> gens(aug.gens);
  std::sort(gens.begin(), gens.end());
  std::vector<MonoidElem> want = {{{0, 1}, {1}}, {{1, 0}, {1}}};
  CHECK(gens == want);
  // Element check: (a - b, b; a) for all 0 <= b <= a.
  auto els = elements_up_to(aug, 2);
  std::vector<MonoidElem> wels = {{{0, 0}, {0}}, {{0, 1}, {1}}, {{0, 2}, {2}},
                                  {{1, 0}, {1}}, {{1, 1}, {2}}, {{2, 0}, {2}}};
  CHECK(els == wels);
}

TEST_CASE("lift_generators slides face generators across the auxiliary grade") {
  GradedMonoid m{1, 1, {{{1}, {1}}}};
  GeneratorSet face;
  face.n = 2;
  face.k = 1;
  face.elems.push_back({{{0, 1}, {1}}, "face"});
  GeneratorSet lifted = lift_generators(m, {0}, {face}, 6);
  CHECK(lifted.n == 2);
  CHECK(lifted.k == 1);
  std::vector<MonoidElem> want = {{{0, 1}, {1}}, {{1, 0}, {1}}};
  CHECK(elems_of(lifted) == want);
  // A face set that cannot generate its face is rejected.
  GeneratorSet bad;
  bad.n = 2;
  bad.k = 1;
  bad.elems.push_back({{{0, 2}, {2}}, "face"});
  CHECK_THROWS_AS(lift_generators(m, {0}, {bad}, 6), std::invalid_argument);
  // A face generator off its face is rejected.
  GeneratorSet off;
  off.n = 2;
  off.k = 1;
  off.elems.push_back({{{1, 0}, {1}}, "face"});
  CHECK_THROWS_AS(lift_generators(m, {0}, {off}, 6), std::invalid_argument);
}

TEST_CASE("extend_from_truncation adjoins module generators and minimalizes") {
  GradedMonoid m = two_gen_monoid();
  auto slice = [&m](long long b) { return elements_up_to(m, b); };
  std::vector<GenEntry> ambient = {{{{2}, {2}}, "tau_1"}, {{{2}, {0}}, "tau_1"},
                                   {{{2}, {-2}}, "tau_1"}};
  ExtensionReport rep = extend_from_truncation(slice, 1, 1, {2}, ambient, 6);
  CHECK(rep.ok);
  std::vector<MonoidElem> want = {{{1}, {-1}}, {{1}, {1}}};
  CHECK(elems_of(rep.gens) == want);
  for (const GenEntry& e : rep.gens.elems) CHECK(e.provenance == "module");
  // With a complete ambient pool and d = 1 nothing needs adjoining: the
  // pool itself minimalizes.
  std::vector<GenEntry> full = {{{{1}, {1}}, "tau_1"}, {{{1}, {-1}}, "tau_1"},
                                {{{2}, {0}}, "tau_1"}};
  ExtensionReport rep1 = extend_from_truncation(slice, 1, 1, {1}, full, 6);
  CHECK(rep1.ok);
  CHECK(elems_of(rep1.gens) == want);
  for (const GenEntry& e : rep1.gens.elems) CHECK(e.provenance == "tau_1");
}

TEST_CASE("simplex_transfer with identity matrices reduces to minimalization") {
  GradedMonoid m = two_gen_monoid();
  auto slice = [&m](long long b) { return elements_up_to(m, b); };
  GeneratorSet ring;
  ring.n = 1;
  ring.k = 1;
  ring.elems.push_back({{{1}, {1}}, "vertex"});
  ring.elems.push_back({{{1}, {-1}}, "vertex"});
  TransferMatrices tm;
  tm.a = {{1}};
  tm.b = {{1}};
  tm.p = 1;
  tm.q = 1;
  ExtensionReport rep = simplex_transfer({ring}, {tm}, slice, 1, 1, 6);
  CHECK(rep.ok);
  std::vector<MonoidElem> want = {{{1}, {-1}}, {{1}, {1}}};
  CHECK(elems_of(rep.gens) == want);
  // Structural validation is exact: a broken row sum is rejected.
  TransferMatrices badtm;
  badtm.a = {{1}};
  badtm.b = {{1}};
  badtm.p = 2;
  badtm.q = 1;
  CHECK_THROWS_AS(simplex_transfer({ring}, {badtm}, slice, 1, 1, 6), std::invalid_argument);
}
