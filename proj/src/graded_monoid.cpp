#include "adjointkit/graded_monoid.hpp"

#include "adjointkit/lp.hpp"
#include "adjointkit/polytope.hpp"
#include "adjointkit/simplex_cover.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace adjointkit {

namespace {

using Key = std::pair<ZVec, ZVec>;

Key key(const MonoidElem& e) { return {e.deg, e.payload}; }

// FNV-1a over both coordinate vectors. Hash containers keyed this way are
// internal scratch; every output below is emitted from sorted ranges.
struct KeyHash {
  size_t operator()(const Key& k) const {
    unsigned long long h = 1469598103934665603ull;
    for (long long v : k.first) h = (h ^ static_cast<unsigned long long>(v)) * 1099511628211ull;
    h = (h ^ 0xabcdefull) * 1099511628211ull;
    for (long long v : k.second) h = (h ^ static_cast<unsigned long long>(v)) * 1099511628211ull;
    return static_cast<size_t>(h);
  }
};

ZVec zadd(const ZVec& a, const ZVec& b) {
  ZVec r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

bool zsub_nonneg(const ZVec& a, const ZVec& b, ZVec& out) {
  out = a;
  for (size_t i = 0; i < a.size(); ++i) {
    out[i] -= b[i];
    if (out[i] < 0) return false;
  }
  return true;
}

ZVec zsub(const ZVec& a, const ZVec& b) {
  ZVec r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

bool zvec_is_zero(const ZVec& a) {
  for (long long x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace

bool operator==(const MonoidElem& a, const MonoidElem& b) {
  return a.deg == b.deg && a.payload == b.payload;
}

bool operator<(const MonoidElem& a, const MonoidElem& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  return a.payload < b.payload;
}

long long total_deg(const ZVec& deg) {
  long long s = 0;
  for (long long x : deg) s += x;
  return s;
}

namespace {

// Ascending sweeps below rely on totals being nondecreasing.
bool total_then_lex(const MonoidElem& a, const MonoidElem& b) {
  long long ta = total_deg(a.deg), tb = total_deg(b.deg);
  if (ta != tb) return ta < tb;
  return a < b;
}

}  // namespace

void validate(const GradedMonoid& m) {
  for (const MonoidElem& g : m.gens) {
    if (static_cast<int>(g.deg.size()) != m.n || static_cast<int>(g.payload.size()) != m.k)
      throw std::invalid_argument("monoid: generator arity mismatch");
    bool zero = true;
    for (long long x : g.deg) {
      if (x < 0) throw std::invalid_argument("monoid: negative multidegree");
      if (x != 0) zero = false;
    }
    if (zero) throw std::invalid_argument("monoid: generator with zero multidegree");
  }
}

std::vector<MonoidElem> elements_up_to(const GradedMonoid& m, long long bound) {
  validate(m);
  std::set<Key> seen;
  std::deque<MonoidElem> work;
  MonoidElem zero{ZVec(m.n, 0), ZVec(m.k, 0)};
  seen.insert(key(zero));
  work.push_back(zero);
  while (!work.empty()) {
    MonoidElem x = std::move(work.front());
    work.pop_front();
    for (const MonoidElem& g : m.gens) {
      MonoidElem y{zadd(x.deg, g.deg), zadd(x.payload, g.payload)};
      if (total_deg(y.deg) > bound) continue;
      if (seen.insert(key(y)).second) work.push_back(y);
    }
  }
  std::vector<MonoidElem> out;
  out.reserve(seen.size());
  for (const Key& k2 : seen) out.push_back({k2.first, k2.second});
  return out;
}

std::optional<ZVec> membership(const GradedMonoid& m, const MonoidElem& x) {
  validate(m);
  if (static_cast<int>(x.deg.size()) != m.n || static_cast<int>(x.payload.size()) != m.k)
    throw std::invalid_argument("membership: arity mismatch");
  for (long long v : x.deg)
    if (v < 0) return std::nullopt;
  long long bound = total_deg(x.deg);
  // BFS with first-parent tracking; generator indices advance smallest
  // first, so the reconstructed exponent vector is input-deterministic.
  std::map<Key, std::pair<Key, int>> parent;
  MonoidElem zero{ZVec(m.n, 0), ZVec(m.k, 0)};
  parent[key(zero)] = {key(zero), -1};
  std::deque<MonoidElem> work{zero};
  Key target = key(x);
  while (!work.empty()) {
    MonoidElem cur = std::move(work.front());
    work.pop_front();
    for (size_t gi = 0; gi < m.gens.size(); ++gi) {
      const MonoidElem& g = m.gens[gi];
      MonoidElem y{zadd(cur.deg, g.deg), zadd(cur.payload, g.payload)};
      if (total_deg(y.deg) > bound) continue;
      Key yk = key(y);
      if (parent.count(yk)) continue;
      parent[yk] = {key(cur), static_cast<int>(gi)};
      if (yk == target) {
        ZVec count(m.gens.size(), 0);
        Key walk = yk;
        while (parent[walk].second >= 0) {
          ++count[parent[walk].second];
          walk = parent[walk].first;
        }
        return count;
      }
      work.push_back(y);
    }
  }
  if (target == key(zero)) return ZVec(m.gens.size(), 0);
  return std::nullopt;
}

GenerationReport is_generated_up_to(const std::vector<MonoidElem>& elements,
                                    const std::vector<MonoidElem>& cands, long long bound) {
  std::vector<MonoidElem> elems(elements);
  std::sort(elems.begin(), elems.end(), total_then_lex);
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::unordered_map<Key, bool, KeyHash> reach;
  reach.reserve(elems.size() * 2);
  for (const MonoidElem& e : elems)
    if (total_deg(e.deg) <= bound) reach[key(e)] = false;

  std::vector<MonoidElem> use;
  for (const MonoidElem& c : cands) {
    if (zvec_is_zero(c.deg) && zvec_is_zero(c.payload)) continue;
    if (total_deg(c.deg) <= bound && !reach.count(key(c)))
      throw std::invalid_argument("is_generated_up_to: candidate outside the monoid");
    use.push_back(c);
  }

  GenerationReport rep;
  for (const MonoidElem& e : elems) {
    if (total_deg(e.deg) > bound) break;
    Key ek = key(e);
    if (zvec_is_zero(e.deg) && zvec_is_zero(e.payload)) {
      reach[ek] = true;
      continue;
    }
    bool ok = false;
    for (const MonoidElem& c : use) {
      ZVec dd;
      if (!zsub_nonneg(e.deg, c.deg, dd)) continue;
      Key prev{std::move(dd), zsub(e.payload, c.payload)};
      auto it = reach.find(prev);
      if (it != reach.end() && it->second) {
        ok = true;
        break;
      }
    }
    reach[ek] = ok;
    if (!ok) rep.missing.push_back(e);
  }
  rep.ok = rep.missing.empty();
  return rep;
}

GenerationReport is_generated_up_to(const GradedMonoid& m, const std::vector<MonoidElem>& cands,
                                    long long bound) {
  long long top = bound;
  for (const MonoidElem& c : cands) top = std::max(top, total_deg(c.deg));
  return is_generated_up_to(elements_up_to(m, top), cands, bound);
}

namespace {

// Minimal nonzero solutions of sum(c_i images_i) == 0 in the finite group
// (Z/d_1) x ... x (Z/d_n): level-synchronized search over group states with
// componentwise dominance pruning; every minimal solution has |c|_1 bounded
// by the order of the subgroup the images generate.
std::vector<ZVec> minimal_congruence_solutions(const std::vector<ZVec>& images, const ZVec& d) {
  size_t r = images.size(), n = d.size();
  auto reduce = [&](ZVec v) {
    for (size_t j = 0; j < n; ++j) v[j] = ((v[j] % d[j]) + d[j]) % d[j];
    return v;
  };
  // Subgroup order: BFS closure.
  std::set<ZVec> subgroup;
  {
    std::deque<ZVec> work{ZVec(n, 0)};
    subgroup.insert(ZVec(n, 0));
    while (!work.empty()) {
      ZVec s = std::move(work.front());
      work.pop_front();
      for (const ZVec& img : images) {
        ZVec t = reduce(zadd(s, img));
        if (subgroup.insert(t).second) work.push_back(t);
      }
    }
  }
  long long cap = static_cast<long long>(subgroup.size());

  auto dominated = [](const ZVec& small, const ZVec& big) {
    for (size_t i = 0; i < small.size(); ++i)
      if (small[i] > big[i]) return false;
    return true;
  };

  std::vector<ZVec> sols;
  std::map<ZVec, std::vector<ZVec>> frontier;
  frontier[ZVec(n, 0)] = {ZVec(r, 0)};
  std::map<ZVec, std::vector<ZVec>> seen_per_state = frontier;

  for (long long level = 1; level <= cap && !frontier.empty(); ++level) {
    std::map<ZVec, std::vector<ZVec>> next;
    for (const auto& [state, cs] : frontier) {
      for (const ZVec& c : cs) {
        for (size_t i = 0; i < r; ++i) {
          ZVec c2(c);
          ++c2[i];
          ZVec state2 = reduce(zadd(state, images[i]));
          bool drop = false;
          for (const ZVec& s : sols)
            if (dominated(s, c2)) {
              drop = true;
              break;
            }
          if (drop) continue;
          if (zvec_is_zero(state2)) {
            // Back at the identity: c2 is a solution, already checked
            // against the minimal ones found so far. The start marker in
            // this state's bucket must not prune it.
            sols.push_back(c2);
            continue;
          }
          auto& bucket = seen_per_state[state2];
          for (const ZVec& v : bucket)
            if (dominated(v, c2)) {
              drop = true;
              break;
            }
          if (drop) continue;
          bucket.push_back(c2);
          next[state2].push_back(c2);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(sols.begin(), sols.end());
  return sols;
}

// Removes elements generated by the rest. Sound in one ascending sweep:
// multidegrees are positive, so any nontrivial decomposition uses strictly
// smaller total degrees only.
std::vector<MonoidElem> minimalize(int n, int k, std::vector<MonoidElem> cands) {
  std::sort(cands.begin(), cands.end(), total_then_lex);
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<MonoidElem> kept;
  for (const MonoidElem& x : cands) {
    std::vector<MonoidElem> others;
    for (const MonoidElem& y : kept)
      if (total_deg(y.deg) < total_deg(x.deg)) others.push_back(y);
    GradedMonoid sub{n, k, others};
    if (others.empty() || !membership(sub, x)) kept.push_back(x);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

GradedMonoid reweight(const GradedMonoid& m, const ZVec& d) {
  validate(m);
  if (static_cast<int>(d.size()) != m.n) throw std::invalid_argument("reweight: arity mismatch");
  for (long long x : d)
    if (x < 1) throw std::invalid_argument("reweight: weights must be positive");
  std::vector<ZVec> images;
  images.reserve(m.gens.size());
  for (const MonoidElem& g : m.gens) {
    ZVec img(g.deg);
    for (size_t j = 0; j < img.size(); ++j) img[j] %= d[j];
    images.push_back(img);
  }
  std::vector<MonoidElem> cands;
  for (const ZVec& c : minimal_congruence_solutions(images, d)) {
    MonoidElem e{ZVec(m.n, 0), ZVec(m.k, 0)};
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (int j = 0; j < m.n; ++j) e.deg[j] += c[i] * m.gens[i].deg[j];
      for (int j = 0; j < m.k; ++j) e.payload[j] += c[i] * m.gens[i].payload[j];
    }
    for (int j = 0; j < m.n; ++j) e.deg[j] /= d[j];
    cands.push_back(std::move(e));
  }
  return GradedMonoid{m.n, m.k, minimalize(m.n, m.k, std::move(cands))};
}

GradedMonoid truncate(const GradedMonoid& m, long long d) {
  return reweight(m, ZVec(m.n, d));
}

EquivalenceReport fg_equivalence_check(const GradedMonoid& m, const ZVec& d, long long bound) {
  EquivalenceReport rep;
  GradedMonoid sub = reweight(m, d);
  long long dmax = 1;
  for (long long x : d) dmax = std::max(dmax, x);

  std::set<Key> ambient;
  for (const MonoidElem& e : elements_up_to(m, bound * dmax)) ambient.insert(key(e));
  std::set<Key> reindexed;
  for (const MonoidElem& e : elements_up_to(sub, bound)) reindexed.insert(key(e));

  size_t expand_fail = 0, collapse_fail = 0, checked_sub = 0, checked_amb = 0;
  for (const Key& k2 : reindexed) {
    ZVec deg(k2.first);
    for (size_t j = 0; j < deg.size(); ++j) deg[j] *= d[j];
    ++checked_sub;
    if (!ambient.count({deg, k2.second})) {
      ++expand_fail;
      if (rep.notes.size() < 8) rep.notes.push_back("reindexed element expands outside the monoid");
    }
  }
  for (const Key& k2 : ambient) {
    bool divisible = true;
    long long tot = 0;
    ZVec deg(k2.first);
    for (size_t j = 0; j < deg.size(); ++j) {
      if (deg[j] % d[j] != 0) {
        divisible = false;
        break;
      }
      deg[j] /= d[j];
      tot += deg[j];
    }
    if (!divisible || tot > bound) continue;
    ++checked_amb;
    if (!reindexed.count({deg, k2.second})) {
      ++collapse_fail;
      if (rep.notes.size() < 8) rep.notes.push_back("divisible element missing from the reindexed monoid");
    }
  }
  rep.consistent = expand_fail == 0 && collapse_fail == 0;
  rep.notes.push_back("checked " + std::to_string(checked_sub) + " reindexed and " +
                      std::to_string(checked_amb) + " divisible elements");
  return rep;
}

namespace {

long long idot(const ZVec& a, const ZVec& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec to_qvec(const ZVec& v) {
  QVec r;
  r.reserve(v.size());
  for (long long x : v) r.emplace_back(x);
  return r;
}

ZVec to_zvec(const QVec& v) {
  ZVec r;
  r.reserve(v.size());
  for (const Rat& x : v) r.push_back(x.to_ll());
  return r;
}

}  // namespace

std::vector<ZVec> hilbert_basis(int ambient, const std::vector<ZVec>& rays) {
  std::set<ZVec> uniq;
  for (const ZVec& r : rays) {
    if (static_cast<int>(r.size()) != ambient) throw std::invalid_argument("hilbert_basis: arity mismatch");
    if (!zvec_is_zero(r)) uniq.insert(to_zvec(primitive_oriented(to_qvec(r))));
  }
  if (uniq.empty()) return {};
  std::vector<ZVec> rs(uniq.begin(), uniq.end());

  QMat qrays;
  for (const ZVec& r : rs) qrays.push_back(to_qvec(r));

  // Extreme rays only; the rest are redundant for everything below.
  std::vector<ZVec> ext;
  QMat qext;
  for (size_t i = 0; i < rs.size(); ++i) {
    QMat others;
    for (size_t j = 0; j < rs.size(); ++j)
      if (j != i) others.push_back(qrays[j]);
    if (!cone_combination(qrays[i], others)) {
      ext.push_back(rs[i]);
      qext.push_back(qrays[i]);
    }
  }
  if (ext.empty()) throw std::invalid_argument("hilbert_basis: cone not pointed");

  // Grading positive on the cone: prefer the all-ones functional when it
  // works (deterministic and small), otherwise ask the LP.
  ZVec w(ambient, 1);
  bool ones_ok = true;
  for (const ZVec& r : ext)
    if (idot(w, r) < 1) {
      ones_ok = false;
      break;
    }
  if (!ones_ok) {
    auto wlp = positive_functional(qext);
    if (!wlp) throw std::invalid_argument("hilbert_basis: cone not pointed");
    QVec scaled = vscale(rat_lcm_den(*wlp), *wlp);
    w = to_zvec(scaled);
  }

  ConeHRep rep = cone_hrep(ambient, qext);
  std::vector<ZVec> ineqs, eqs;
  for (const QVec& v : rep.ineqs) ineqs.push_back(to_zvec(v));
  for (const QVec& v : rep.eqs) eqs.push_back(to_zvec(v));
  auto in_cone = [&](const ZVec& x) {
    for (const ZVec& e : eqs)
      if (idot(e, x) != 0) return false;
    for (const ZVec& a : ineqs)
      if (idot(a, x) < 0) return false;
    return true;
  };

  // Candidates: a lattice point sits in a simplicial subcone spanned by
  // extreme rays, and splitting off an integral ray multiple decomposes
  // it, so every indecomposable is an extreme ray or an integer point of
  // the half-open ray parallelepiped of a cross-section simplex.
  std::set<ZVec> cands(ext.begin(), ext.end());
  QMat sections;
  std::map<QVec, int> sec_index;
  for (size_t i = 0; i < ext.size(); ++i) {
    QVec s = vscale(Rat(1) / Rat(idot(w, ext[i])), to_qvec(ext[i]));
    sec_index[s] = static_cast<int>(i);
    sections.push_back(std::move(s));
  }
  auto fracpart = [](const Rat& r) { return r - Rat(r.floor()); };
  for (const Simplex& s : triangulate(convex_hull(ambient, sections))) {
    QMat rows;
    for (const QVec& v : s.verts) {
      auto it = sec_index.find(v);
      if (it == sec_index.end())
        throw std::logic_error("hilbert_basis: stray triangulation vertex");
      rows.push_back(qext[it->second]);
    }
    size_t kk = rows.size();
    // Coordinates on which the rays restrict to an invertible square
    // matrix; integer points are determined by these coordinates.
    std::vector<int> piv;
    QMat sq(kk);
    for (int j = 0; j < ambient && piv.size() < kk; ++j) {
      QMat probe(sq);
      for (size_t i = 0; i < kk; ++i) probe[i].push_back(rows[i][j]);
      if (rank(probe) == static_cast<int>(piv.size()) + 1) {
        piv.push_back(j);
        sq = std::move(probe);
      }
    }
    auto inv = inverse(transpose(sq));
    if (piv.size() != kk || !inv)
      throw std::logic_error("hilbert_basis: dependent simplex rays");
    // The fractional parts of lambda = inv . x over integer x form a
    // finite group; walk its closure from the images of unit vectors.
    QMat gens;
    for (size_t j = 0; j < kk; ++j) {
      QVec g(kk);
      for (size_t i = 0; i < kk; ++i) g[i] = fracpart((*inv)[i][j]);
      gens.push_back(std::move(g));
    }
    std::set<QVec> group{QVec(kk, Rat(0))};
    std::deque<QVec> work{QVec(kk, Rat(0))};
    while (!work.empty()) {
      QVec g = std::move(work.front());
      work.pop_front();
      for (const QVec& h : gens) {
        QVec sum(kk);
        for (size_t i = 0; i < kk; ++i) sum[i] = fracpart(g[i] + h[i]);
        if (group.insert(sum).second) work.push_back(sum);
      }
    }
    for (const QVec& lam : group) {
      QVec x(ambient, Rat(0));
      for (size_t i = 0; i < kk; ++i) x = vadd(x, vscale(lam[i], rows[i]));
      bool integral = true;
      ZVec xz(ambient, 0);
      for (int j = 0; j < ambient; ++j) {
        if (x[j] != Rat(x[j].floor())) {
          integral = false;
          break;
        }
        xz[j] = x[j].floor().get_si();
      }
      if (integral && !zvec_is_zero(xz)) cands.insert(xz);
    }
  }

  // Scan candidates by w-level upward; an element decomposes iff
  // subtracting some already-found basis element lands back in the cone.
  std::map<long long, std::vector<ZVec>> by_level;
  for (const ZVec& c : cands) by_level[idot(w, c)].push_back(c);

  std::vector<ZVec> basis;
  for (auto& [lvl, xs] : by_level) {
    (void)lvl;
    std::sort(xs.begin(), xs.end());
    for (const ZVec& cand : xs) {
      bool decomposable = false;
      for (const ZVec& g : basis) {
        ZVec diff = zsub(cand, g);
        if (!zvec_is_zero(diff) && in_cone(diff)) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) basis.push_back(cand);
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

GeneratorSet semiample_generators(const std::vector<QMat>& polygon_vertices) {
  if (polygon_vertices.empty()) throw std::invalid_argument("semiample_generators: no polygons");
  int t = static_cast<int>(polygon_vertices.size());
  int pay = -1;
  for (const QMat& poly : polygon_vertices) {
    if (poly.empty()) throw std::invalid_argument("semiample_generators: empty polygon");
    for (const QVec& v : poly) {
      if (pay < 0) pay = static_cast<int>(v.size());
      if (static_cast<int>(v.size()) != pay)
        throw std::invalid_argument("semiample_generators: polygon dimension mismatch");
    }
  }
  std::vector<ZVec> rays;
  for (int i = 0; i < t; ++i) {
    for (const QVec& v : polygon_vertices[i]) {
      Rat l = rat_lcm_den(v);
      ZVec ray(t + pay, 0);
      ray[i] = l.to_ll();
      for (int j = 0; j < pay; ++j) ray[t + j] = (l * v[j]).to_ll();
      rays.push_back(std::move(ray));
    }
  }
  GeneratorSet out;
  out.n = t;
  out.k = pay;
  for (const ZVec& h : hilbert_basis(t + pay, rays)) {
    MonoidElem e{ZVec(h.begin(), h.begin() + t), ZVec(h.begin() + t, h.end())};
    out.elems.push_back({std::move(e), "cayley"});
  }
  return out;
}

namespace {

std::vector<ZVec> rays_from_hrep(int ambient, const std::vector<ZVec>& normals) {
  // Rays of a pointed cone {x : n.x >= 0}: nullspaces of (ambient-1)-subsets
  // of active constraints, sign-fixed and feasibility-filtered.
  QMat qn;
  for (const ZVec& v : normals) qn.push_back(to_qvec(v));
  std::set<ZVec> rays;
  std::vector<int> idx;
  size_t need = static_cast<size_t>(ambient - 1);
  auto feasible = [&](const QVec& x) {
    bool lo = true, hi = true;
    for (const QVec& nrm : qn) {
      int s = dot(nrm, x).sign();
      if (s < 0) lo = false;
      if (s > 0) hi = false;
    }
    if (lo) return 1;
    if (hi) return -1;
    return 0;
  };
  auto rec = [&](auto&& self, size_t start) -> void {
    if (idx.size() == need) {
      QMat sys;
      for (int i : idx) sys.push_back(qn[i]);
      if (sys.empty()) sys.push_back(QVec(ambient));
      QMat ns = nullspace(sys);
      if (ns.size() == 1) {
        int s = feasible(ns[0]);
        if (s != 0) {
          QVec r = s > 0 ? ns[0] : vscale(Rat(-1), ns[0]);
          rays.insert(to_zvec(primitive_oriented(r)));
        }
      }
      return;
    }
    for (size_t i = start; i < qn.size(); ++i) {
      idx.push_back(static_cast<int>(i));
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return {rays.begin(), rays.end()};
}

}  // namespace

GradedMonoid augment(const GradedMonoid& m, const std::vector<int>& support) {
  validate(m);
  for (int j : support)
    if (j < 0 || j >= m.n) throw std::invalid_argument("augment: support index out of range");
  size_t r = m.gens.size();
  int cdim = static_cast<int>(r) + 1;
  std::vector<ZVec> normals;
  for (int i = 0; i < cdim; ++i) {
    ZVec e(cdim, 0);
    e[i] = 1;
    normals.push_back(std::move(e));
  }
  for (int j : support) {
    ZVec row(cdim, 0);
    for (size_t i = 0; i < r; ++i) row[i] = m.gens[i].deg[j];
    row[r] = -1;
    normals.push_back(std::move(row));
  }
  std::vector<ZVec> rays = rays_from_hrep(cdim, normals);
  std::vector<MonoidElem> cands;
  for (const ZVec& h : hilbert_basis(cdim, rays)) {
    // psi(c, b) = ((sum c_i deg_i - b * e_support, b); sum c_i payload_i)
    MonoidElem e{ZVec(m.n + 1, 0), ZVec(m.k, 0)};
    for (size_t i = 0; i < r; ++i) {
      if (h[i] == 0) continue;
      for (int j = 0; j < m.n; ++j) e.deg[j] += h[i] * m.gens[i].deg[j];
      for (int j = 0; j < m.k; ++j) e.payload[j] += h[i] * m.gens[i].payload[j];
    }
    long long b = h[r];
    for (int j : support) e.deg[j] -= b;
    e.deg[m.n] = b;
    cands.push_back(std::move(e));
  }
  return GradedMonoid{m.n + 1, m.k, minimalize(m.n + 1, m.k, std::move(cands))};
}

namespace {

// R-bar element enumeration from an ambient element list: ((deg - b e, b);
// payload) for each admissible b. Total (a, b)-degree <= bound.
std::vector<MonoidElem> rbar_elements(const std::vector<MonoidElem>& ambient,
                                      const std::vector<int>& support, int n, long long bound) {
  std::vector<MonoidElem> out;
  for (const MonoidElem& x : ambient) {
    long long bmax = bound;
    for (int j : support) bmax = std::min(bmax, x.deg[j]);
    if (support.empty()) bmax = bound - total_deg(x.deg);
    for (long long b = 0; b <= bmax; ++b) {
      MonoidElem e{x.deg, x.payload};
      for (int j : support) e.deg[j] -= b;
      e.deg.resize(n + 1);
      e.deg[n] = b;
      if (total_deg(e.deg) <= bound) out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

GeneratorSet lift_generators(const GradedMonoid& m, const std::vector<int>& support,
                             const std::vector<GeneratorSet>& face_gens, long long bound) {
  validate(m);
  // The slide multiplies totals by at most |support|; enumerate the ambient
  // monoid far enough out.
  long long amb_bound = bound * std::max<long long>(1, static_cast<long long>(support.size()));
  std::vector<MonoidElem> amb = elements_up_to(m, amb_bound);
  return lift_generators(rbar_elements(amb, support, m.n, bound), m.n, m.k, support, face_gens,
                         bound);
}

GeneratorSet lift_generators(const std::vector<MonoidElem>& augmented_elements, int n, int k,
                             const std::vector<int>& support,
                             const std::vector<GeneratorSet>& face_gens, long long bound) {
  std::vector<int> supp(support);
  std::sort(supp.begin(), supp.end());
  supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
  if (supp.size() != support.size() || supp != support)
    throw std::invalid_argument("lift_generators: support must be sorted and duplicate-free");
  for (int j : supp)
    if (j < 0 || j >= n) throw std::invalid_argument("lift_generators: support index out of range");
  if (face_gens.size() != supp.size())
    throw std::invalid_argument("lift_generators: one generator set per support coordinate");

  const std::vector<MonoidElem>& rbar = augmented_elements;
  std::set<Key> rbar_set;
  for (const MonoidElem& e : rbar) rbar_set.insert(key(e));

  GeneratorSet out;
  out.n = n + 1;
  out.k = k;
  std::set<Key> emitted;
  for (size_t fi = 0; fi < supp.size(); ++fi) {
    const GeneratorSet& fg = face_gens[fi];
    if (fg.n != n + 1 || fg.k != k)
      throw std::invalid_argument("lift_generators: face generator arity mismatch");
    std::vector<MonoidElem> face_elems;
    for (const MonoidElem& e : rbar)
      if (e.deg[supp[fi]] == 0) face_elems.push_back(e);
    std::vector<MonoidElem> cands;
    for (const GenEntry& g : fg.elems) {
      if (g.elem.deg[supp[fi]] != 0)
        throw std::invalid_argument("lift_generators: face generator not on its face");
      if (total_deg(g.elem.deg) <= bound && !rbar_set.count(key(g.elem)))
        throw std::invalid_argument("lift_generators: face generator outside the monoid");
      cands.push_back(g.elem);
    }
    GenerationReport face_rep = is_generated_up_to(face_elems, cands, bound);
    if (!face_rep.ok)
      throw std::invalid_argument("lift_generators: face set " + std::to_string(fi) +
                                  " fails to generate its face up to the bound");
    for (size_t gi = 0; gi < fg.elems.size(); ++gi) {
      const MonoidElem& g = fg.elems[gi].elem;
      long long b = g.deg[n];
      ZVec u(g.deg.begin(), g.deg.begin() + n);
      for (int j : supp) u[j] += b;
      for (long long s = 0; s <= b; ++s) {
        MonoidElem e{u, g.payload};
        for (int j : supp) e.deg[j] -= s;
        e.deg.resize(n + 1);
        e.deg[n] = s;
        if (emitted.insert(key(e)).second) {
          out.elems.push_back({std::move(e), "g_{" + std::to_string(fi + 1) + "," +
                                                 std::to_string(gi + 1) + "}(s=" + std::to_string(s) +
                                                 ")"});
        }
      }
    }
  }
  std::vector<MonoidElem> all;
  for (const GenEntry& g : out.elems) all.push_back(g.elem);
  GenerationReport rep = is_generated_up_to(rbar, all, bound);
  if (!rep.ok)
    throw std::invalid_argument("lift_generators: lifted set fails to generate up to the bound (" +
                                std::to_string(rep.missing.size()) + " witnesses)");
  std::sort(out.elems.begin(), out.elems.end(),
            [](const GenEntry& a, const GenEntry& b) { return a.elem < b.elem; });
  return out;
}

ExtensionReport extend_from_truncation(
    const std::function<std::vector<MonoidElem>(long long)>& slice, int n, int k, const ZVec& d,
    const std::vector<GenEntry>& ambient, long long bound) {
  ExtensionReport rep;
  rep.gens.n = n;
  rep.gens.k = k;
  std::vector<MonoidElem> elems = slice(bound);
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::unordered_set<Key, KeyHash> eset;
  eset.reserve(elems.size() * 2);
  for (const MonoidElem& e : elems) eset.insert(key(e));
  std::vector<MonoidElem> telems(elems);
  std::sort(telems.begin(), telems.end(), total_then_lex);

  std::vector<GenEntry> pool;
  for (const GenEntry& g : ambient) {
    if (static_cast<int>(g.elem.deg.size()) != n || static_cast<int>(g.elem.payload.size()) != k)
      throw std::invalid_argument("extend_from_truncation: ambient arity mismatch");
    if (total_deg(g.elem.deg) <= bound && !eset.count(key(g.elem))) {
      rep.ok = false;
      rep.notes.push_back("ambient element outside the target monoid");
      return rep;
    }
    pool.push_back(g);
  }

  auto divisible = [&](const ZVec& deg) {
    for (size_t j = 0; j < deg.size(); ++j)
      if (deg[j] % d[j] != 0) return false;
    return true;
  };

  // Hypothesis check: every divisible element up to the bound must already
  // be reachable from the ambient elements. Non-divisible gaps are expected
  // at this stage (module generators come next).
  {
    std::vector<MonoidElem> amb_elems;
    for (const GenEntry& g : pool) amb_elems.push_back(g.elem);
    GenerationReport hyp = is_generated_up_to(elems, amb_elems, bound);
    size_t div_missing = 0;
    for (const MonoidElem& miss : hyp.missing)
      if (divisible(miss.deg)) ++div_missing;
    if (div_missing > 0) {
      rep.ok = false;
      rep.notes.push_back("divisible slice is not generated by the ambient elements (" +
                          std::to_string(div_missing) + " witnesses)");
      return rep;
    }
  }

  // Atoms of the divisible submonoid, by ascending sweep: an element is an
  // atom unless some earlier atom splits off leaving a monoid element. The
  // difference of divisible degrees is divisible, so membership suffices.
  std::vector<MonoidElem> atoms;
  for (const MonoidElem& t : telems) {
    if (total_deg(t.deg) > bound) break;
    if (!divisible(t.deg)) continue;
    if (zvec_is_zero(t.deg) && zvec_is_zero(t.payload)) continue;
    bool split = false;
    for (const MonoidElem& a : atoms) {
      ZVec dd;
      if (!zsub_nonneg(t.deg, a.deg, dd)) continue;
      if (eset.count({std::move(dd), zsub(t.payload, a.payload)})) {
        split = true;
        break;
      }
    }
    if (!split) atoms.push_back(t);
  }

  // Module generators of the residue classes: adjoin x unless some nonzero
  // divisible t keeps x - t inside the monoid. Scanning atoms is enough:
  // any divisible witness sheds an atom that is itself a witness.
  for (const MonoidElem& x : telems) {
    if (total_deg(x.deg) > bound) break;
    if (divisible(x.deg)) continue;
    bool reducible = false;
    for (const MonoidElem& a : atoms) {
      ZVec dd;
      if (!zsub_nonneg(x.deg, a.deg, dd)) continue;
      if (eset.count({std::move(dd), zsub(x.payload, a.payload)})) {
        reducible = true;
        break;
      }
    }
    if (!reducible) pool.push_back({x, "module"});
  }

  // Minimalize within the enumerated range, keeping anything out of range.
  // Stable sort keeps ambient provenance ahead of module provenance on
  // collisions.
  std::stable_sort(pool.begin(), pool.end(), [](const GenEntry& a, const GenEntry& b) { return total_then_lex(a.elem, b.elem); });
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](const GenEntry& a, const GenEntry& b) { return a.elem == b.elem; }),
             pool.end());
  // One ascending reachability sweep decides redundancy: a pool element is
  // dropped exactly when the elements kept so far already reach it. A kept
  // element never appears in a decomposition at a lower total, so marking
  // it reachable on arrival keeps the sweep exact.
  std::vector<GenEntry> kept;
  std::vector<MonoidElem> use;
  std::unordered_set<Key, KeyHash> reached;
  reached.reserve(telems.size() * 2);
  size_t pi = 0;
  for (const MonoidElem& e : telems) {
    if (total_deg(e.deg) > bound) break;
    bool ok = zvec_is_zero(e.deg) && zvec_is_zero(e.payload);
    if (!ok) {
      for (const MonoidElem& c : use) {
        ZVec dd;
        if (!zsub_nonneg(e.deg, c.deg, dd)) continue;
        if (reached.count({std::move(dd), zsub(e.payload, c.payload)})) {
          ok = true;
          break;
        }
      }
    }
    if (pi < pool.size() && pool[pi].elem == e) {
      if (!ok) {
        kept.push_back(pool[pi]);
        use.push_back(e);
        ok = true;
      }
      ++pi;
    }
    if (ok) reached.insert(key(e));
  }
  for (; pi < pool.size(); ++pi) kept.push_back(pool[pi]);
  rep.gens.elems = std::move(kept);

  std::vector<MonoidElem> final_elems;
  for (const GenEntry& g : rep.gens.elems) final_elems.push_back(g.elem);
  GenerationReport fin = is_generated_up_to(elems, final_elems, bound);
  if (!fin.ok) {
    rep.ok = false;
    rep.notes.push_back("final generator set fails to generate up to the bound");
  }
  rep.notes.push_back("generators: " + std::to_string(rep.gens.elems.size()));
  return rep;
}

ExtensionReport extend_from_truncation(const GradedMonoid& m, long long d,
                                       const std::vector<GenEntry>& ambient, long long bound) {
  validate(m);
  auto slice = [&m](long long b) { return elements_up_to(m, b); };
  return extend_from_truncation(slice, m.n, m.k, ZVec(m.n, d), ambient, bound);
}

ExtensionReport simplex_transfer(const std::vector<GeneratorSet>& vertex_rings,
                                 const std::vector<TransferMatrices>& mats,
                                 const std::function<std::vector<MonoidElem>(long long)>& slice,
                                 int n, int k, long long bound) {
  ExtensionReport rep;
  rep.gens.n = n;
  rep.gens.k = k;
  if (vertex_rings.empty() || vertex_rings.size() != mats.size())
    throw std::invalid_argument("simplex_transfer: rings and matrices must pair up");
  long long p = mats[0].p, q = mats[0].q;
  if (p < 1 || q < 1) throw std::invalid_argument("simplex_transfer: p, q must be positive");

  for (size_t lam = 0; lam < mats.size(); ++lam) {
    const TransferMatrices& tm = mats[lam];
    if (tm.p != p || tm.q != q)
      throw std::invalid_argument("simplex_transfer: global p, q must agree across simplices");
    if (static_cast<int>(tm.a.size()) != n || static_cast<int>(tm.b.size()) != n)
      throw std::invalid_argument("simplex_transfer: matrix arity mismatch");
    for (const ZVec& row : tm.b) {
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("simplex_transfer: matrix arity mismatch");
      long long s = 0;
      for (long long x : row) {
        if (x < 0) throw std::invalid_argument("simplex_transfer: b must be nonnegative");
        s += x;
      }
      if (s != q) throw std::invalid_argument("simplex_transfer: b row sums must equal q");
    }
    for (const ZVec& row : tm.a) {
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("simplex_transfer: matrix arity mismatch");
      long long s = 0;
      for (long long x : row) s += x;
      if (s != p) throw std::invalid_argument("simplex_transfer: a row sums must equal p");
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long long s = 0;
        for (int t = 0; t < n; ++t) s += tm.a[i][t] * tm.b[t][j];
        if (s != (i == j ? p * q : 0))
          throw std::invalid_argument("simplex_transfer: a.b != p q I");
      }
  }

  std::vector<MonoidElem> elems = slice(bound);
  std::set<Key> eset;
  for (const MonoidElem& e : elems) eset.insert(key(e));

  std::vector<GenEntry> pooled;
  std::set<Key> pooled_keys;
  for (size_t lam = 0; lam < vertex_rings.size(); ++lam) {
    const GeneratorSet& ring = vertex_rings[lam];
    if (ring.n != n || ring.k != k)
      throw std::invalid_argument("simplex_transfer: ring arity mismatch");
    GradedMonoid mring{n, k, {}};
    for (const GenEntry& g : ring.elems) mring.gens.push_back(g.elem);
    GradedMonoid trunc = truncate(mring, q);
    for (const MonoidElem& h : trunc.gens) {
      MonoidElem img{ZVec(n, 0), h.payload};
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) img.deg[j] += mats[lam].b[i][j] * h.deg[i];
      if (total_deg(img.deg) <= bound && !eset.count(key(img))) {
        rep.ok = false;
        rep.notes.push_back("transferred generator lies outside the target monoid");
        return rep;
      }
      if (pooled_keys.insert(key(img)).second)
        pooled.push_back({img, "tau_" + std::to_string(lam + 1)});
    }
  }
  rep.notes.push_back("pooled " + std::to_string(pooled.size()) + " transferred generators, pq=" +
                      std::to_string(p * q));

  ExtensionReport ext = extend_from_truncation(slice, n, k, ZVec(n, p * q), pooled, bound);
  rep.ok = rep.ok && ext.ok;
  rep.gens = std::move(ext.gens);
  for (std::string& note : ext.notes) rep.notes.push_back(std::move(note));
  return rep;
}

}  // namespace adjointkit
