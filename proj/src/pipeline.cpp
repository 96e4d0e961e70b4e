#include "adjointkit/pipeline.hpp"

#include "adjointkit/json_io.hpp"
#include "adjointkit/linalg.hpp"
#include "adjointkit/lp.hpp"
#include "adjointkit/simplex_cover.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>

namespace adjointkit {

namespace {

using ordered_json = nlohmann::ordered_json;

void emit(const TraceFn& trace, const ordered_json& j) {
  if (trace) trace(j.dump());
}

ordered_json elements_json(const GeneratorSet& g) { return to_json(g)["elements"]; }

}  // namespace

void validate_instance(const AdjointInstance& inst) {
  validate_surface(inst.surface);
  if (static_cast<int>(inst.rays.size()) != inst.surface.r)
    throw std::invalid_argument("instance: one fan ray per tracked class");
  NumericalSurface model = toric_surface(inst.rays, inst.surface.k);
  if (model.q != inst.surface.q)
    throw std::invalid_argument("instance: intersection matrix does not match the fan");
  if (inst.deltas.empty()) throw std::invalid_argument("instance: no boundary rows");
  for (const QVec& row : inst.deltas) {
    if (static_cast<int>(row.size()) != inst.surface.r)
      throw std::invalid_argument("instance: boundary arity mismatch");
    for (const Rat& c : row)
      if (c.sign() < 0 || c > Rat(1))
        throw std::invalid_argument("instance: boundary coefficients must lie in [0, 1]");
  }
}

namespace {

long long floor_div(__int128 a, __int128 b) {
  __int128 q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return static_cast<long long>(q);
}

// Lattice points of the section polygon of a divisor on the fan. The fan is
// complete, so the polygon is bounded and, when nonempty, has a vertex where
// two independent constraints meet; the bounding box comes from scanning
// those candidate vertices, all in integer arithmetic.
std::vector<ZVec> polygon_lattice_points(const std::vector<ZVec>& rays, const QVec& d) {
  std::vector<ZVec> out;
  const size_t n = rays.size();
  // Clearing denominators keeps everything in plain integers.
  long long scale = rat_lcm_den(d).to_ll();
  std::vector<long long> off(n);
  for (size_t j = 0; j < n; ++j) off[j] = (Rat(scale) * d[j]).to_ll();
  bool any = false;
  __int128 mn[2], mx[2], mnd[2], mxd[2];
  for (size_t j = 0; j < n; ++j)
    for (size_t k = j + 1; k < n; ++k) {
      __int128 det = static_cast<__int128>(rays[j][0]) * rays[k][1] -
                     static_cast<__int128>(rays[j][1]) * rays[k][0];
      if (det == 0) continue;
      __int128 num[2] = {static_cast<__int128>(off[k]) * rays[j][1] -
                             static_cast<__int128>(off[j]) * rays[k][1],
                         static_cast<__int128>(off[j]) * rays[k][0] -
                             static_cast<__int128>(off[k]) * rays[j][0]};
      __int128 den = det * scale;
      if (den < 0) { den = -den; num[0] = -num[0]; num[1] = -num[1]; }
      __int128 adet = den / scale;
      bool ok = true;
      for (size_t l = 0; l < n && ok; ++l)
        if (rays[l][0] * num[0] + rays[l][1] * num[1] + adet * off[l] < 0) ok = false;
      if (!ok) continue;
      for (int c = 0; c < 2; ++c) {
        if (!any || num[c] * mnd[c] < mn[c] * den) { mn[c] = num[c]; mnd[c] = den; }
        if (!any || num[c] * mxd[c] > mx[c] * den) { mx[c] = num[c]; mxd[c] = den; }
      }
      any = true;
    }
  if (!any) return out;
  long long lo[2], hi[2];
  for (int c = 0; c < 2; ++c) {
    lo[c] = -floor_div(-mn[c], mnd[c]);
    hi[c] = floor_div(mx[c], mxd[c]);
  }
  for (long long x = lo[0]; x <= hi[0]; ++x)
    for (long long y = lo[1]; y <= hi[1]; ++y) {
      bool inside = true;
      for (size_t j = 0; j < n && inside; ++j)
        if (scale * (rays[j][0] * x + rays[j][1] * y) + off[j] < 0) inside = false;
      if (inside) out.push_back({x, y});
    }
  return out;
}

QVec adjoint_divisor(const AdjointInstance& inst, const QMat& deltas, const ZVec& m) {
  long long mtot = total_deg(m);
  QVec d = vscale(Rat(mtot), inst.surface.k);
  for (size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) d = vadd(d, vscale(Rat(m[i]), deltas[i]));
  return d;
}

}  // namespace

std::vector<MonoidElem> adjoint_slice(const AdjointInstance& inst, const QMat& deltas,
                                      long long bound) {
  int n = static_cast<int>(deltas.size());
  std::vector<MonoidElem> out;
  ZVec m(n, 0);
  // Odometer over all m >= 0 with |m|_1 <= bound.
  for (;;) {
    for (const ZVec& u : polygon_lattice_points(inst.rays, adjoint_divisor(inst, deltas, m)))
      out.push_back({m, u});
    int j = n - 1;
    while (j >= 0) {
      ++m[j];
      if (total_deg(m) <= bound) break;
      m[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

GenerationReport verify_generators(const AdjointInstance& inst, const std::vector<MonoidElem>& gens,
                                   long long bound) {
  return is_generated_up_to(adjoint_slice(inst, inst.deltas, bound), gens, bound);
}

namespace {

QVec delta_at(const QMat& deltas, const QVec& t) {
  size_t n = deltas.size();
  QVec d = deltas[n - 1];
  for (size_t i = 0; i + 1 < n; ++i)
    d = vadd(d, vscale(t[i], vsub(deltas[i], deltas[n - 1])));
  return d;
}

// Pushes k + delta(t) through a chamber's contraction set (ascending
// original indices), asserting non-positive degree on every contracted
// class and a nef outcome. Returns the final divisor and the surviving
// original ray indices.
struct PushedDivisor {
  QVec divisor;
  std::vector<int> kept;  // original indices of surviving classes
  NumericalSurface surface;
};

PushedDivisor push_through(const AdjointInstance& inst, const std::vector<int>& contracted,
                           const QVec& upstairs) {
  PushedDivisor res;
  res.surface = inst.surface;
  res.divisor = upstairs;
  res.kept.resize(inst.surface.r);
  std::iota(res.kept.begin(), res.kept.end(), 0);
  for (int orig : contracted) {
    auto it = std::find(res.kept.begin(), res.kept.end(), orig);
    if (it == res.kept.end()) throw inconsistency_error("pipeline: contraction index lost");
    int idx = static_cast<int>(it - res.kept.begin());
    QVec unit(res.surface.r, Rat(0));
    unit[idx] = Rat(1);
    if (intersect(res.surface, res.divisor, unit).sign() > 0)
      throw inconsistency_error("pipeline: contracted class has positive degree");
    ContractionResult c = contract(res.surface, idx);
    res.divisor = mat_vec(c.pushforward, res.divisor);
    res.surface = std::move(c.surface);
    res.kept.erase(it);
  }
  if (!is_nef(res.surface, res.divisor))
    throw inconsistency_error("pipeline: pushed divisor is not nef on the final model");
  return res;
}

// Everything adjoint_slice provides, as a reusable oracle. Consumers ask
// for the same bound repeatedly, so results are memoized per bound.
std::function<std::vector<MonoidElem>(long long)> slice_oracle(const AdjointInstance& inst,
                                                               const QMat& deltas) {
  auto cache = std::make_shared<std::map<long long, std::vector<MonoidElem>>>();
  return [&inst, deltas, cache](long long b) {
    auto it = cache->find(b);
    if (it == cache->end()) it = cache->emplace(b, adjoint_slice(inst, deltas, b)).first;
    return it->second;
  };
}

GeneratorSet leaf_base_case(const AdjointInstance& inst, const QMat& deltas, long long bound,
                            const TraceFn& trace) {
  const QVec& delta = deltas[0];
  GeneratorSet empty;
  empty.n = 1;
  empty.k = 2;
  if (!is_pseff(inst.surface, vadd(inst.surface.k, delta))) {
    std::vector<MonoidElem> elems = adjoint_slice(inst, deltas, bound);
    if (elems.size() != 1)
      throw inconsistency_error("pipeline: sections on a non-pseudoeffective adjoint divisor");
    emit(trace, {{"event", "leaf"}, {"tuple", 1}, {"pseff", false}, {"generators", 0}});
    return empty;
  }
  MMPResult mmp = run_mmp(inst.surface, delta);
  if (mmp.outcome != "minimal-model")
    throw inconsistency_error("pipeline: fiber-type outcome on a pseudoeffective adjoint divisor");
  std::vector<int> contracted;
  for (const MMPStep& s : mmp.steps) contracted.push_back(s.orig);
  std::sort(contracted.begin(), contracted.end());
  PushedDivisor pd = push_through(inst, contracted, vadd(inst.surface.k, delta));
  std::vector<ZVec> kept_rays;
  for (int orig : pd.kept) kept_rays.push_back(inst.rays[orig]);
  Polytope poly = toric_polygon(kept_rays, pd.divisor);
  if (poly.empty())
    throw inconsistency_error("pipeline: empty section polygon on a pseudoeffective divisor");
  GeneratorSet ring = semiample_generators({poly.vertices()});
  TransferMatrices tm;
  tm.a = {{1}};
  tm.b = {{1}};
  tm.p = 1;
  tm.q = 1;
  ExtensionReport rep = simplex_transfer({ring}, {tm}, slice_oracle(inst, deltas), 1, 2, bound);
  if (!rep.ok) {
    std::string msg = "pipeline: base-case transfer failed";
    for (const std::string& note : rep.notes) msg += "; " + note;
    throw inconsistency_error(msg);
  }
  emit(trace, {{"event", "leaf"},
               {"tuple", 1},
               {"pseff", true},
               {"contractions", contracted.size()},
               {"generators", rep.gens.elems.size()},
               {"elements", elements_json(rep.gens)}});
  return rep.gens;
}

}  // namespace

GeneratorSet process_leaf(const AdjointInstance& inst, const QMat& deltas, long long bound,
                          const TraceFn& trace) {
  int n = static_cast<int>(deltas.size());
  if (n == 1) return leaf_base_case(inst, deltas, bound, trace);
  int cdim = n - 1;

  QMat corners;  // chart points of the tuple members: e_i, then the origin
  for (int i = 0; i < cdim; ++i) {
    QVec e(cdim, Rat(0));
    e[i] = Rat(1);
    corners.push_back(e);
  }
  corners.push_back(QVec(cdim, Rat(0)));
  Polytope chart = convex_hull(cdim, corners);

  std::vector<Chamber> chambers = wlc_decomposition(inst.surface, deltas, chart);
  if (chambers.empty()) {
    std::vector<MonoidElem> elems = adjoint_slice(inst, deltas, bound);
    if (elems.size() != 1)
      throw inconsistency_error("pipeline: sections outside the pseudoeffective region");
    emit(trace, {{"event", "leaf"}, {"tuple", n}, {"pseff", false}, {"generators", 0}});
    GeneratorSet empty;
    empty.n = n;
    empty.k = 2;
    return empty;
  }

  std::vector<Polytope> cells;
  for (const Chamber& c : chambers) cells.push_back(c.cell);
  SimplexCover cover = cover_respecting(chart, cells);
  if (auto fail = verify_cover(chart, cells, cover))
    throw inconsistency_error("pipeline: cover verification failed: " + *fail);

  // Global denominators: q clears the simplex vertices' barycentric
  // coordinates, p clears the corner coordinates over each simplex.
  std::vector<QMat> betas;    // per simplex: rows = barycentric coords of its vertices
  std::vector<QMat> gammas;   // per simplex: rows = corner coords over its vertices
  for (const AlignedSimplex& as : cover.simplices) {
    const QMat& verts = as.simplex.verts;
    if (static_cast<int>(verts.size()) != n)
      throw inconsistency_error("pipeline: cover simplex is not full-dimensional");
    QMat beta;
    for (const QVec& v : verts) {
      QVec row(v);
      Rat rest(1);
      for (const Rat& x : v) rest -= x;
      row.push_back(rest);
      beta.push_back(row);
    }
    // Corner j over the simplex vertices: solve the affine system.
    QMat sys(cdim + 1, QVec(n));
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < cdim; ++c) sys[c][i] = verts[i][c];
      sys[cdim][i] = Rat(1);
    }
    QMat gamma;
    for (int j = 0; j < n; ++j) {
      QVec rhs(corners[j]);
      rhs.push_back(Rat(1));
      auto sol = solve(sys, rhs);
      if (!sol) throw inconsistency_error("pipeline: degenerate cover simplex");
      gamma.push_back(*sol);
    }
    betas.push_back(std::move(beta));
    gammas.push_back(std::move(gamma));
  }
  // lcm of all denominators, taken exactly.
  auto lcm_into = [](Rat& acc, const QMat& rows) {
    for (const QVec& row : rows) {
      Rat l = rat_lcm_den(row);
      mpz_class a = acc.num(), b = l.num();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      acc = Rat(mpz_class(a / g * b));
    }
  };
  Rat q_rat(1), p_rat(1);
  for (const QMat& beta : betas) lcm_into(q_rat, beta);
  for (const QMat& gamma : gammas) lcm_into(p_rat, gamma);
  long long q = q_rat.to_ll(), p = p_rat.to_ll();

  std::vector<GeneratorSet> rings;
  std::vector<TransferMatrices> mats;
  size_t skipped = 0;
  for (size_t si = 0; si < cover.simplices.size(); ++si) {
    const AlignedSimplex& as = cover.simplices[si];
    if (as.face.empty()) {
      ++skipped;
      continue;
    }
    if (!as.part)
      throw inconsistency_error("pipeline: aligned simplex with a face but no part");
    const Chamber& chamber = chambers[*as.part];

    std::vector<int> s_pseff;
    for (int i = 0; i < n; ++i)
      if (as.face.contains(as.simplex.verts[i])) s_pseff.push_back(i);
    if (s_pseff.empty())
      throw inconsistency_error("pipeline: nonempty face misses every simplex vertex");

    std::vector<QMat> polys;
    for (int i : s_pseff) {
      QVec upstairs = vadd(inst.surface.k, delta_at(deltas, as.simplex.verts[i]));
      PushedDivisor pd = push_through(inst, chamber.contracted, upstairs);
      std::vector<ZVec> kept_rays;
      for (int orig : pd.kept) kept_rays.push_back(inst.rays[orig]);
      Polytope poly = toric_polygon(kept_rays, pd.divisor);
      if (poly.empty())
        throw inconsistency_error("pipeline: empty section polygon at a pseudoeffective vertex");
      polys.push_back(poly.vertices());
    }
    GeneratorSet local = semiample_generators(polys);
    GeneratorSet ring;
    ring.n = n;
    ring.k = 2;
    for (const GenEntry& g : local.elems) {
      MonoidElem e{ZVec(n, 0), g.elem.payload};
      for (size_t a = 0; a < s_pseff.size(); ++a) e.deg[s_pseff[a]] = g.elem.deg[a];
      ring.elems.push_back({std::move(e), g.provenance});
    }
    rings.push_back(std::move(ring));

    TransferMatrices tm;
    tm.p = p;
    tm.q = q;
    for (int i = 0; i < n; ++i) {
      ZVec row(n);
      for (int j = 0; j < n; ++j) row[j] = (Rat(q) * betas[si][i][j]).to_ll();
      tm.b.push_back(std::move(row));
    }
    for (int j = 0; j < n; ++j) {
      ZVec row(n);
      for (int i = 0; i < n; ++i) row[i] = (Rat(p) * gammas[si][j][i]).to_ll();
      tm.a.push_back(std::move(row));
    }
    mats.push_back(std::move(tm));
  }
  emit(trace, {{"event", "leaf"},
               {"tuple", n},
               {"chambers", chambers.size()},
               {"simplices", cover.simplices.size()},
               {"skipped", skipped},
               {"p", p},
               {"q", q}});

  if (rings.empty()) {
    // Every simplex misses the region except in measure zero; the only
    // sections live at isolated degrees, which the extension step would
    // have to produce from nothing. Fall back to the module machinery with
    // an empty pool.
    ExtensionReport rep = extend_from_truncation(slice_oracle(inst, deltas), n, 2,
                                                 ZVec(n, p * q), {}, bound);
    if (!rep.ok) throw inconsistency_error("pipeline: extension over an empty pool failed");
    return rep.gens;
  }

  ExtensionReport rep = simplex_transfer(rings, mats, slice_oracle(inst, deltas), n, 2, bound);
  if (!rep.ok) {
    std::string msg = "pipeline: transfer failed";
    for (const std::string& note : rep.notes) msg += "; " + note;
    throw inconsistency_error(msg);
  }
  ordered_json jmats = ordered_json::array();
  for (const TransferMatrices& tm : mats) jmats.push_back(to_json(tm));
  emit(trace, {{"event", "transfer"},
               {"tuple", n},
               {"matrices", std::move(jmats)},
               {"generators", rep.gens.elems.size()},
               {"elements", elements_json(rep.gens)}});
  return rep.gens;
}

namespace {

struct Reducer {
  const AdjointInstance& inst;
  long long bound;
  const TraceFn& trace;

  GeneratorSet solve(const QMat& deltas) {
    int n = static_cast<int>(deltas.size());
    if (n > 1) {
      // Drop: some boundary is a convex combination of the others.
      for (int t = 0; t < n; ++t) {
        QMat others;
        for (int u = 0; u < n; ++u)
          if (u != t) others.push_back(deltas[u]);
        if (auto combo = convex_combination(deltas[t], others)) return drop(deltas, t, *combo);
      }
      // Insert: affinely dependent tuple without a convex relation.
      int adim = affine_dim(deltas);
      if (n >= adim + 2) return insert(deltas, adim);
    }
    GeneratorSet g = process_leaf(inst, deltas, bound, trace);
    return g;
  }

  GeneratorSet drop(const QMat& deltas, int t, const QVec& combo) {
    int n = static_cast<int>(deltas.size());
    Rat qr = rat_lcm_den(combo);
    long long q = qr.to_ll();
    std::vector<int> support;
    ZVec coeffs;
    for (int i = 0, pos = 0; i < n; ++i) {
      if (i == t) continue;
      if (combo[pos].sign() > 0) {
        support.push_back(i);
        coeffs.push_back((qr * combo[pos]).to_ll());
      }
      ++pos;
    }
    {
      ordered_json ev{{"event", "node"}, {"kind", "drop"}, {"tuple", n}, {"drop", t}, {"q", q}};
      ev["support"] = support;
      ev["coeffs"] = coeffs;
      emit(trace, ev);
    }

    // Solve the children: one per support member, each omitting that row.
    std::vector<GeneratorSet> child_gens;
    for (int j : support) {
      QMat child(deltas);
      child.erase(child.begin() + j);
      child_gens.push_back(solve(child));
    }

    // Reindexing weights on the parent tuple.
    ZVec d(n, 1);
    d[t] = q;
    for (size_t a = 0; a < support.size(); ++a) d[support[a]] = coeffs[a];
    long long dmax = *std::max_element(d.begin(), d.end());

    // Augmented elements (a over the tuple minus t, b) from the divisible
    // part of the parent enumeration.
    std::vector<MonoidElem> parent_far = adjoint_slice(inst, deltas, bound * dmax);
    std::vector<MonoidElem> rbar;
    for (const MonoidElem& x : parent_far) {
      bool ok = true;
      ZVec m(x.deg);
      for (int u = 0; u < n && ok; ++u) {
        if (m[u] % d[u] != 0) ok = false;
        m[u] /= d[u];
      }
      if (!ok || total_deg(m) > bound) continue;
      ZVec ab;
      for (int u = 0; u < n; ++u)
        if (u != t) ab.push_back(m[u]);
      ab.push_back(m[t]);
      rbar.push_back({std::move(ab), x.payload});
    }
    std::sort(rbar.begin(), rbar.end());

    std::vector<int> supp_a;
    for (int u : support) supp_a.push_back(u < t ? u : u - 1);

    // Face generator sets: the reweighted child rings, embedded.
    std::vector<GeneratorSet> face_gens;
    for (size_t a = 0; a < support.size(); ++a) {
      int j = support[a];
      ZVec d_child(n - 1, 1);
      for (int v = 0; v < n - 1; ++v) {
        int w = v < j ? v : v + 1;
        if (w == t) {
          d_child[v] = q;
        } else {
          auto it = std::find(support.begin(), support.end(), w);
          if (it != support.end() && w != j) d_child[v] = coeffs[it - support.begin()];
        }
      }
      GradedMonoid child_m{n - 1, 2, {}};
      for (const GenEntry& g : child_gens[a].elems) child_m.gens.push_back(g.elem);
      GradedMonoid rw = reweight(child_m, d_child);

      GeneratorSet face;
      face.n = n;  // (n - 1) a-coordinates plus b
      face.k = 2;
      int pos_t_child = t < j ? t : t - 1;
      for (const MonoidElem& g : rw.gens) {
        ZVec ab(n, 0);
        for (int v = 0; v < n - 1; ++v) {
          int w = v < j ? v : v + 1;  // original tuple index of child coordinate v
          if (w == t) continue;
          ab[w < t ? w : w - 1] = g.deg[v];
        }
        ab[n - 1] = g.deg[pos_t_child];
        face.elems.push_back({{std::move(ab), g.payload}, "face"});
      }
      face_gens.push_back(std::move(face));
    }

    GeneratorSet lifted = lift_generators(rbar, n - 1, 2, supp_a, face_gens, bound);

    // Back to the reindexed parent grading, then expand by the weights.
    std::vector<GenEntry> ambient;
    for (const GenEntry& g : lifted.elems) {
      ZVec m(n, 0);
      for (int u = 0, pos = 0; u < n; ++u) {
        if (u == t) continue;
        m[u] = g.elem.deg[pos++];
      }
      m[t] = g.elem.deg[n - 1];
      for (int u = 0; u < n; ++u) m[u] *= d[u];
      ambient.push_back({{std::move(m), g.elem.payload}, g.provenance});
    }

    ExtensionReport rep =
        extend_from_truncation(slice_oracle(inst, deltas), n, 2, d, ambient, bound);
    if (!rep.ok) {
      std::string msg = "pipeline: drop combine failed";
      for (const std::string& note : rep.notes) msg += "; " + note;
      throw inconsistency_error(msg);
    }
    emit(trace, {{"event", "combine"},
                 {"kind", "drop"},
                 {"tuple", n},
                 {"generators", rep.gens.elems.size()},
                 {"elements", elements_json(rep.gens)}});
    return rep.gens;
  }

  GeneratorSet insert(const QMat& deltas, int adim) {
    int n = static_cast<int>(deltas.size());
    int r = static_cast<int>(deltas[0].size());
    // Chart of the affine hull: greedy affinely independent basis.
    std::vector<int> basis{0};
    for (int i = 1; i < n && static_cast<int>(basis.size()) < adim + 1; ++i) {
      QMat pts;
      for (int b : basis) pts.push_back(deltas[b]);
      pts.push_back(deltas[i]);
      if (affine_dim(pts) == static_cast<int>(basis.size())) basis.push_back(i);
    }
    if (static_cast<int>(basis.size()) != adim + 1)
      throw inconsistency_error("pipeline: affine basis extraction failed");
    QMat sys(r, QVec(adim));
    for (int row = 0; row < r; ++row)
      for (int c = 0; c < adim; ++c) sys[row][c] = deltas[basis[c + 1]][row] - deltas[basis[0]][row];
    QMat chart_pts;
    for (int i = 0; i < n; ++i) {
      auto sol = adjointkit::solve(sys, vsub(deltas[i], deltas[basis[0]]));
      if (!sol) throw inconsistency_error("pipeline: boundary outside its affine hull");
      chart_pts.push_back(*sol);
    }
    CommonPointCertificate cert = common_point(convex_hull(adim, chart_pts));
    QVec p(deltas[basis[0]]);
    for (int c = 0; c < adim; ++c)
      p = vadd(p, vscale(cert.point[c], vsub(deltas[basis[c + 1]], deltas[basis[0]])));
    {
      ordered_json ev{{"event", "node"}, {"kind", "insert"}, {"tuple", n}};
      std::vector<std::string> coords;
      for (const Rat& x : p) coords.push_back(x.str());
      ev["point"] = coords;
      emit(trace, ev);
    }

    QMat child(deltas);
    child.push_back(p);
    GeneratorSet child_set = solve(child);

    GeneratorSet out;
    out.n = n;
    out.k = 2;
    for (const GenEntry& g : child_set.elems) {
      if (g.elem.deg[n] != 0) continue;
      ZVec m(g.elem.deg.begin(), g.elem.deg.begin() + n);
      out.elems.push_back({{std::move(m), g.elem.payload}, g.provenance});
    }
    std::vector<MonoidElem> flat;
    for (const GenEntry& g : out.elems) flat.push_back(g.elem);
    GenerationReport rep = is_generated_up_to(adjoint_slice(inst, deltas, bound), flat, bound);
    if (!rep.ok)
      throw inconsistency_error("pipeline: insert combine fails to generate (" +
                                std::to_string(rep.missing.size()) + " witnesses)");
    emit(trace, {{"event", "combine"},
                 {"kind", "insert"},
                 {"tuple", n},
                 {"generators", out.elems.size()},
                 {"elements", elements_json(out)}});
    return out;
  }
};

}  // namespace

PipelineResult run_pipeline(const AdjointInstance& inst, long long bound, const TraceFn& trace) {
  validate_instance(inst);
  if (bound < 1) throw std::invalid_argument("pipeline: bound must be positive");
  emit(trace, {{"event", "begin"}, {"bound", bound}, {"instance", to_json(inst)}});
  Reducer red{inst, bound, trace};
  PipelineResult res;
  res.gens = red.solve(inst.deltas);
  std::vector<MonoidElem> flat;
  for (const GenEntry& g : res.gens.elems) flat.push_back(g.elem);
  GenerationReport rep = verify_generators(inst, flat, bound);
  res.verified = rep.ok;
  if (!rep.ok)
    res.notes.push_back("final verification failed with " + std::to_string(rep.missing.size()) +
                        " witnesses");
  res.notes.push_back("generators: " + std::to_string(res.gens.elems.size()));
  emit(trace, {{"event", "result"},
               {"generators", res.gens.elems.size()},
               {"verified", res.verified},
               {"elements", elements_json(res.gens)}});
  return res;
}

TraceCheck verify_trace(const std::vector<std::string>& lines) {
  TraceCheck out;
  if (lines.empty()) return out;  // nothing recorded, nothing to contradict

  std::vector<ordered_json> recorded;
  for (size_t i = 0; i < lines.size(); ++i) {
    ordered_json j = ordered_json::parse(lines[i], nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("event"))
      throw std::invalid_argument("trace: line " + std::to_string(i) + " is not an event record");
    recorded.push_back(std::move(j));
  }
  if (recorded[0].at("event") != "begin" || !recorded[0].contains("instance") ||
      !recorded[0].contains("bound"))
    throw std::invalid_argument("trace: first line must carry the instance and bound");

  AdjointInstance inst = instance_from_json(recorded[0].at("instance"));
  long long bound = recorded[0].at("bound").get<long long>();

  std::vector<std::string> replayed;
  std::string aborted;
  try {
    run_pipeline(inst, bound, [&replayed](const std::string& line) { replayed.push_back(line); });
  } catch (const std::exception& e) {
    aborted = e.what();
  }

  for (size_t i = 0; i < lines.size(); ++i) {
    TraceStepCheck step;
    step.index = static_cast<int>(i);
    step.event = recorded[i].at("event").get<std::string>();
    if (i < replayed.size()) {
      step.ok = replayed[i] == lines[i];
      if (!step.ok) step.note = "differs from replay";
    } else {
      step.ok = false;
      step.note = aborted.empty() ? "no matching replay step" : "replay aborted: " + aborted;
    }
    if (!step.ok) out.ok = false;
    out.steps.push_back(std::move(step));
  }
  if (replayed.size() > lines.size()) {
    out.ok = false;
    out.steps.push_back({static_cast<int>(lines.size()), "(end)", false,
                         "replay produced " + std::to_string(replayed.size() - lines.size()) +
                             " further steps"});
  }
  return out;
}

}  // namespace adjointkit
