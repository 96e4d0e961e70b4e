#include "adjointkit/simplex_cover.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace adjointkit {

namespace {

// Sparse certificate bundle over original vertex indices: for each deletable
// index, convex coefficients (by index) expressing the point.
struct CPWork {
  QVec point;
  std::map<int, std::map<int, Rat>> memb;
};

QMat gather(const QMat& verts, const std::vector<int>& idx) {
  QMat m;
  m.reserve(idx.size());
  for (int i : idx) m.push_back(verts[i]);
  return m;
}

// First affinely independent (n+1)-subset in index order, plus the single
// leftover index (the base case has exactly n+2 points).
void greedy_basis(const QMat& verts, const std::vector<int>& idx, int n,
                  std::vector<int>& basis, int& leftover) {
  basis.clear();
  QMat sel;
  std::vector<int> rest;
  for (int i : idx) {
    if (static_cast<int>(basis.size()) < n + 1) {
      QMat trial(sel);
      trial.push_back(verts[i]);
      if (affine_dim(trial) == static_cast<int>(sel.size())) {
        sel = std::move(trial);
        basis.push_back(i);
        continue;
      }
    }
    rest.push_back(i);
  }
  if (static_cast<int>(basis.size()) != n + 1 || rest.size() != 1)
    throw std::logic_error("common_point: degenerate base configuration");
  leftover = rest[0];
}

CPWork cp_base(const QMat& verts, const std::vector<int>& idx, int n) {
  std::vector<int> basis;
  int w = -1;
  greedy_basis(verts, idx, n, basis, w);
  const QVec& origin = verts[basis[n]];

  // Affine chart: basis[0..n-1] map to the canonical basis, basis[n] to 0.
  QMat cols(n, QVec(n));
  for (int j = 0; j < n; ++j) {
    QVec d = vsub(verts[basis[j]], origin);
    for (int i = 0; i < n; ++i) cols[i][j] = d[i];
  }
  auto minv = inverse(cols);
  if (!minv) throw std::logic_error("common_point: chart not invertible");
  QVec a = mat_vec(*minv, vsub(verts[w], origin));

  std::vector<int> neg, pos;
  for (int j = 0; j < n; ++j) (a[j].sign() < 0 ? neg : pos).push_back(j);

  QVec p_norm(n);
  std::map<int, Rat> combo1, combo2;
  std::vector<int> combo1_for, combo2_for;  // deletable index groups

  if (neg.empty()) {
    Rat s;
    for (int j = 0; j < n; ++j) s += a[j];
    if (s <= Rat(1)) throw std::logic_error("common_point: non-vertex input point");
    for (int j = 0; j < n; ++j) p_norm[j] = a[j] / s;
    for (int j = 0; j < n; ++j)
      if (a[j].sign() != 0) combo1[basis[j]] = a[j] / s;
    combo1_for = {basis[n], w};
    combo2[w] = Rat(1) / s;
    combo2[basis[n]] = Rat(1) - Rat(1) / s;
    for (int j = 0; j < n; ++j) combo2_for.push_back(basis[j]);
  } else {
    Rat aminus, b;
    for (int j : neg) aminus -= a[j];
    for (int j : pos) b += a[j];
    if (Rat(1) + aminus <= b) {
      for (int j : pos) p_norm[j] = a[j] / b;
      for (int j : pos)
        if (a[j].sign() != 0) combo1[basis[j]] = a[j] / b;
      for (int j : neg) combo1_for.push_back(basis[j]);
      combo1_for.push_back(basis[n]);
      combo1_for.push_back(w);
      combo2[w] = Rat(1) / b;
      for (int j : neg) combo2[basis[j]] = -a[j] / b;
      Rat rem = Rat(1) - (Rat(1) + aminus) / b;
      if (rem.sign() != 0) combo2[basis[n]] = rem;
      for (int j : pos) combo2_for.push_back(basis[j]);
    } else {
      Rat denom = Rat(1) + aminus;
      for (int j : pos) p_norm[j] = a[j] / denom;
      for (int j : pos)
        if (a[j].sign() != 0) combo1[basis[j]] = a[j] / denom;
      Rat rem = Rat(1) - b / denom;
      if (rem.sign() != 0) combo1[basis[n]] = rem;
      for (int j : neg) combo1_for.push_back(basis[j]);
      combo1_for.push_back(w);
      combo2[w] = Rat(1) / denom;
      for (int j : neg) combo2[basis[j]] = -a[j] / denom;
      for (int j : pos) combo2_for.push_back(basis[j]);
      combo2_for.push_back(basis[n]);
    }
  }

  CPWork out;
  out.point = QVec(origin);
  for (int i = 0; i < n; ++i) {
    Rat acc;
    for (int j = 0; j < n; ++j) acc += cols[i][j] * p_norm[j];
    out.point[i] += acc;
  }
  for (int d : combo1_for) out.memb[d] = combo1;
  for (int d : combo2_for) out.memb[d] = combo2;
  return out;
}

CPWork cp_rec(const QMat& verts, const std::vector<int>& idx, int n) {
  int m = static_cast<int>(idx.size());
  if (m == n + 2) return cp_base(verts, idx, n);
  // Delete the smallest index whose removal keeps the hull full-dimensional;
  // all remaining points stay vertices of the smaller hull.
  for (int k = 0; k < m; ++k) {
    std::vector<int> rest(idx);
    rest.erase(rest.begin() + k);
    if (affine_dim(gather(verts, rest)) != n) continue;
    CPWork sub = cp_rec(verts, rest, n);
    CPWork out;
    out.point = sub.point;
    out.memb = sub.memb;  // sparse: zero at the removed index is implicit
    out.memb[idx[k]] = sub.memb.begin()->second;
    return out;
  }
  throw std::logic_error("common_point: no removable vertex");
}

}  // namespace

CommonPointCertificate common_point(const Polytope& c) {
  int n = c.ambient();
  int m = static_cast<int>(c.vertices().size());
  if (c.dim() != n) throw std::invalid_argument("common_point: polytope not full-dimensional");
  if (m <= n + 1) throw std::invalid_argument("common_point: need at least n+2 vertices");

  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  CPWork work = cp_rec(c.vertices(), idx, n);

  CommonPointCertificate cert;
  cert.point = work.point;
  cert.memberships.resize(m);
  for (int del = 0; del < m; ++del) {
    auto it = work.memb.find(del);
    if (it == work.memb.end()) throw std::logic_error("common_point: missing certificate");
    QVec coeffs;
    QVec acc(n);
    Rat total;
    for (int j = 0; j < m; ++j) {
      if (j == del) continue;
      auto cit = it->second.find(j);
      Rat w = cit == it->second.end() ? Rat(0) : cit->second;
      if (w.sign() < 0) throw std::logic_error("common_point: negative certificate weight");
      coeffs.push_back(w);
      total += w;
      acc = vadd(acc, vscale(w, c.vertices()[j]));
    }
    if (total != Rat(1) || acc != cert.point)
      throw std::logic_error("common_point: certificate failed re-verification");
    cert.memberships[del] = std::move(coeffs);
  }
  return cert;
}

std::vector<Simplex> triangulate(const Polytope& p) {
  std::vector<Simplex> out;
  if (p.empty()) return out;
  if (p.dim() == 0) {
    out.push_back({p.vertices()});
    return out;
  }
  const QVec& apex = p.vertices()[0];
  for (const Polytope& f : faces(p, p.dim() - 1)) {
    if (f.contains(apex)) continue;
    for (const Simplex& s : triangulate(f)) {
      QMat verts(s.verts);
      verts.push_back(apex);
      std::sort(verts.begin(), verts.end(), lex_less);
      if (affine_dim(verts) != static_cast<int>(verts.size()) - 1)
        throw std::logic_error("triangulate: degenerate cone");
      out.push_back({std::move(verts)});
    }
  }
  return out;
}

SimplexCover fan_triangulate(const QVec& apex, const SimplexCover& base) {
  SimplexCover out;
  for (const AlignedSimplex& as : base.simplices) {
    QMat verts(as.simplex.verts);
    verts.push_back(apex);
    std::sort(verts.begin(), verts.end(), lex_less);
    if (affine_dim(verts) != static_cast<int>(verts.size()) - 1)
      throw std::invalid_argument("fan_triangulate: apex affinely dependent on a simplex");
    out.simplices.push_back({{std::move(verts)}, as.face, as.part});
  }
  return out;
}

namespace {

void out_append(SimplexCover& out, SimplexCover more) {
  for (AlignedSimplex& as : more.simplices) out.simplices.push_back(std::move(as));
}

SimplexCover cover_rec(const Polytope& c, const std::vector<Polytope>& parts) {
  SimplexCover out;
  if (c.empty()) return out;
  int d = c.dim();
  int ambient = c.ambient();

  if (d == 0) {
    AlignedSimplex as{{c.vertices()}, Polytope(ambient), std::nullopt};
    for (size_t i = 0; i < parts.size(); ++i) {
      if (!parts[i].empty() && parts[i].contains(c.vertices()[0])) {
        as.face = c;
        as.part = static_cast<int>(i);
        break;
      }
    }
    out.simplices.push_back(std::move(as));
    return out;
  }

  QMat dpts;
  for (const Polytope& part : parts)
    for (const QVec& v : part.vertices()) dpts.push_back(v);
  if (dpts.empty()) {
    for (const Simplex& s : triangulate(c))
      out.simplices.push_back({s, Polytope(ambient), std::nullopt});
    return out;
  }
  Polytope dhull = convex_hull(ambient, dpts);

  if (dhull.dim() == d) {
    // Full-dimensional parts are covered by their own fans; each such
    // simplex lies inside its part, so it meets the union in itself.
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].dim() != d) continue;
      for (const Simplex& s : triangulate(parts[i]))
        out.simplices.push_back({s, convex_hull(ambient, s.verts), static_cast<int>(i)});
    }
  }

  // Each boundary half-space h of the union cuts off C_h = C ∩ {h <= 0},
  // whose interior misses the union; fan C_h from an interior point over
  // its facets and recurse on each facet.
  for (const HalfSpace& h : dhull.hrep()) {
    bool vanishes_on_c = true;
    for (const QVec& v : c.vertices())
      if (h.eval(v).sign() != 0) {
        vanishes_on_c = false;
        break;
      }
    if (vanishes_on_c) continue;
    Polytope ch = intersect_halfspace(c, h.flipped());
    if (ch.dim() < d) continue;
    QVec p = ch.barycenter();
    for (const Polytope& f : faces(ch, d - 1)) {
      std::vector<Polytope> sub_parts;
      sub_parts.reserve(parts.size());
      for (const Polytope& part : parts) sub_parts.push_back(intersect(part, f));
      out_append(out, fan_triangulate(p, cover_rec(f, sub_parts)));
    }
  }
  return out;
}

}  // namespace

SimplexCover cover_respecting(const Polytope& c, const std::vector<Polytope>& parts) {
  if (c.empty()) throw std::invalid_argument("cover_respecting: empty polytope");
  for (const Polytope& part : parts) {
    if (part.ambient() != c.ambient())
      throw std::invalid_argument("cover_respecting: ambient mismatch");
    for (const QVec& v : part.vertices())
      if (!c.contains(v)) throw std::invalid_argument("cover_respecting: part not inside C");
  }
  return cover_rec(c, parts);
}

std::optional<std::string> verify_cover(const Polytope& c, const std::vector<Polytope>& parts,
                                        const SimplexCover& cover) {
  for (const Polytope& part : parts)
    for (const QVec& v : part.vertices())
      if (!c.contains(v)) return "part not inside C";
  std::vector<Polytope> hulls;
  for (const AlignedSimplex& as : cover.simplices) {
    if (affine_dim(as.simplex.verts) != static_cast<int>(as.simplex.verts.size()) - 1)
      return "simplex vertices affinely dependent";
    if (static_cast<int>(as.simplex.verts.size()) != c.dim() + 1)
      return "simplex dimension does not match C";
    for (const QVec& v : as.simplex.verts)
      if (!c.contains(v)) return "simplex not inside C";
    hulls.push_back(convex_hull(c.ambient(), as.simplex.verts));
  }
  if (!covers_exactly(c, hulls)) return "union of simplices is not C";
  for (size_t k = 0; k < cover.simplices.size(); ++k) {
    const AlignedSimplex& as = cover.simplices[k];
    const Polytope& hull = hulls[k];
    if (as.face.empty()) {
      for (const Polytope& part : parts)
        if (!intersect(hull, part).empty()) return "simplex meets a part but face is empty";
      continue;
    }
    if (!as.part || *as.part < 0 || static_cast<size_t>(*as.part) >= parts.size())
      return "alignment part index out of range";
    Polytope expected = intersect(hull, parts[*as.part]);
    if (!(expected == as.face)) return "face is not simplex ∩ part";
    for (const Polytope& part : parts) {
      Polytope cut = intersect(hull, part);
      for (const QVec& v : cut.vertices())
        if (!as.face.contains(v)) return "simplex ∩ part sticks out of the face";
    }
    if (!is_face_of(as.face, hull)) return "alignment set is not a face of the simplex";
  }
  return std::nullopt;
}

}  // namespace adjointkit
