#pragma once

// Finitely generated submonoids of Z_{>=0}^n x Z^k: the first n coordinates
// are the multidegree (never negative), the last k an abelian payload.
// Everything is verified by bounded exhaustive enumeration; "generates up
// to N" always means: every monoid element of total multidegree <= N is a
// nonnegative integer combination of the given elements.

#include "adjointkit/rational.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adjointkit {

struct MonoidElem {
  ZVec deg;
  ZVec payload;
};

bool operator==(const MonoidElem& a, const MonoidElem& b);
bool operator<(const MonoidElem& a, const MonoidElem& b);

struct GradedMonoid {
  int n = 0;
  int k = 0;
  std::vector<MonoidElem> gens;
};

struct GenEntry {
  MonoidElem elem;
  std::string provenance;
};

struct GeneratorSet {
  int n = 0;
  int k = 0;
  std::vector<GenEntry> elems;
};

// Degree-change data for one covering simplex: b rows express the simplex
// vertices over the boundary tuple scaled by q, a rows express the tuple
// corners over the simplex vertices scaled by p, and a.b == p q I.
struct TransferMatrices {
  std::vector<ZVec> a;
  std::vector<ZVec> b;
  long long p = 1;
  long long q = 1;
};

long long total_deg(const ZVec& deg);

// Throws std::invalid_argument on negative degrees or a generator with zero
// multidegree (only the zero payload lives in multidegree zero).
void validate(const GradedMonoid& m);

// All elements of total multidegree <= bound, sorted. Includes the zero
// element.
std::vector<MonoidElem> elements_up_to(const GradedMonoid& m, long long bound);

// Exponent vector over m.gens reaching x, or nullopt when x is not in the
// monoid. Deterministic: smallest generator index advances first.
std::optional<ZVec> membership(const GradedMonoid& m, const MonoidElem& x);

struct GenerationReport {
  bool ok = true;
  // Elements of total degree <= bound not reachable from the candidates.
  std::vector<MonoidElem> missing;
};

// Checks that every monoid element of total degree <= bound is a sum of
// candidate elements. Candidates must lie in the monoid themselves.
GenerationReport is_generated_up_to(const GradedMonoid& m, const std::vector<MonoidElem>& cands,
                                    long long bound);
// Same, over an explicitly enumerated ambient element list (must be closed
// under subtraction of candidates where degrees stay nonnegative).
GenerationReport is_generated_up_to(const std::vector<MonoidElem>& elements,
                                    const std::vector<MonoidElem>& cands, long long bound);

// Submonoid of elements whose multidegree is componentwise divisible by d,
// reindexed by deg_j -> deg_j / d_j. Generators are the images of the
// minimal solutions of sum(c_i deg_i) == 0 mod d, then minimalized.
GradedMonoid reweight(const GradedMonoid& m, const ZVec& d);
// reweight with the constant vector (d, ..., d).
GradedMonoid truncate(const GradedMonoid& m, long long d);

struct EquivalenceReport {
  bool consistent = true;
  std::vector<std::string> notes;
};

// Cross-checks truncation against the ambient monoid up to the bound: the
// reindexed submonoid's elements expand to ambient elements and conversely.
EquivalenceReport fg_equivalence_check(const GradedMonoid& m, const ZVec& d, long long bound);

// Hilbert basis of the pointed rational cone generated by rays (integer
// vectors). Throws std::invalid_argument when the cone is not pointed.
std::vector<ZVec> hilbert_basis(int ambient, const std::vector<ZVec>& rays);

// Generators of the multigraded section monoid of a list of rational
// polygons: lattice points (e_i; v) spanning the Cayley cone over the i-th
// polygon. Payload dimension = polygon ambient dimension.
GeneratorSet semiample_generators(const std::vector<QMat>& polygon_vertices);

// R-bar construction: pairs (x, b) with x in the monoid and deg(x) >= b on
// every support coordinate, graded by (deg(x) - b * e_support, b).
GradedMonoid augment(const GradedMonoid& m, const std::vector<int>& support);

// From generator sets of the b-faces R-bar^i = {deg_{j_i} part vanishes},
// produce generators of R-bar by sliding the auxiliary coordinate:
// g = ((a, b); v) yields g(s) = ((u - s e, s); v), u = a + b e, 0 <= s <= b.
// Each input set is checked to generate its face up to the bound; the
// output is checked to generate R-bar up to the bound.
GeneratorSet lift_generators(const GradedMonoid& m, const std::vector<int>& support,
                             const std::vector<GeneratorSet>& face_gens, long long bound);
// Same over an explicit enumeration of the augmented monoid: elements carry
// n + 1 degree coordinates (a_1..a_n, b) and must be complete up to the
// bound; support indexes the a-coordinates.
GeneratorSet lift_generators(const std::vector<MonoidElem>& augmented_elements, int n, int k,
                             const std::vector<int>& support,
                             const std::vector<GeneratorSet>& face_gens, long long bound);

struct ExtensionReport {
  bool ok = true;
  GeneratorSet gens;
  std::vector<std::string> notes;
};

// Given elements whose algebra contains the d-divisible part of the target,
// adjoins one module generator per residue class: x is adjoined iff no
// nonzero d-divisible element t of the target satisfies x - t in the
// target. Result is minimalized and verified up to the bound.
// The target is an explicit element enumeration (ambient slice oracle).
ExtensionReport extend_from_truncation(const std::function<std::vector<MonoidElem>(long long)>& slice,
                                       int n, int k, const ZVec& d,
                                       const std::vector<GenEntry>& ambient, long long bound);
// Convenience overload: target given by generators.
ExtensionReport extend_from_truncation(const GradedMonoid& m, long long d,
                                       const std::vector<GenEntry>& ambient, long long bound);

// Assembles generators of the target monoid from per-simplex vertex rings:
// truncate each by q, map degrees through b^T, pool, then extend from the
// p*q-truncation over the target slice oracle. Validates row sums and
// a.b == p q I exactly.
ExtensionReport simplex_transfer(const std::vector<GeneratorSet>& vertex_rings,
                                 const std::vector<TransferMatrices>& mats,
                                 const std::function<std::vector<MonoidElem>(long long)>& slice,
                                 int n, int k, long long bound);

}  // namespace adjointkit
