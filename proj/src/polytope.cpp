#include "adjointkit/polytope.hpp"

#include "adjointkit/lp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace adjointkit {

namespace {

struct VecLess {
  bool operator()(const QVec& a, const QVec& b) const { return lex_less(a, b); }
};

// Scales (normal, offset) by a positive rational so all entries become
// coprime integers; orientation is preserved.
HalfSpace scale_coprime(HalfSpace h) {
  QVec joint(h.normal);
  joint.push_back(h.offset);
  mpz_class l = 1, g = 0;
  for (const Rat& x : joint) {
    mpz_class d = x.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  for (const Rat& x : joint) {
    mpz_class n = x.num() * (l / x.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) g = 1;
  for (size_t i = 0; i < joint.size(); ++i) {
    mpz_class n = joint[i].num() * (l / joint[i].den());
    joint[i] = Rat(mpz_class(n / g));
  }
  h.offset = joint.back();
  joint.pop_back();
  h.normal = std::move(joint);
  return h;
}

QMat row_space_basis(const QMat& rows) {
  QMat m(rows);
  std::vector<int> piv = rref(m);
  m.resize(piv.size());
  return m;
}

}  // namespace

bool operator==(const HalfSpace& a, const HalfSpace& b) {
  return a.offset == b.offset && a.normal == b.normal;
}

bool operator<(const HalfSpace& a, const HalfSpace& b) {
  if (lex_less(a.normal, b.normal)) return true;
  if (lex_less(b.normal, a.normal)) return false;
  return a.offset < b.offset;
}

std::vector<HalfSpace> Polytope::hrep() const {
  std::vector<HalfSpace> hs(facets_);
  for (const HalfSpace& e : eqs_) {
    hs.push_back(e);
    hs.push_back(e.flipped());
  }
  return hs;
}

bool Polytope::contains(const QVec& x) const {
  if (empty()) return false;
  if (static_cast<int>(x.size()) != ambient_) throw std::invalid_argument("contains: dim mismatch");
  for (const HalfSpace& e : eqs_)
    if (e.eval(x).sign() != 0) return false;
  for (const HalfSpace& f : facets_)
    if (f.eval(x).sign() < 0) return false;
  return true;
}

bool Polytope::contains_in_relative_interior(const QVec& x) const {
  if (empty()) return false;
  for (const HalfSpace& e : eqs_)
    if (e.eval(x).sign() != 0) return false;
  for (const HalfSpace& f : facets_)
    if (f.eval(x).sign() <= 0) return false;
  if (dim_ == 0) return verts_[0] == x;
  return true;
}

QVec Polytope::barycenter() const {
  if (empty()) throw std::invalid_argument("barycenter: empty polytope");
  QVec s(ambient_);
  for (const QVec& v : verts_) s = vadd(s, v);
  return vscale(Rat(1, static_cast<long long>(verts_.size())), s);
}

bool operator==(const Polytope& a, const Polytope& b) {
  return a.ambient() == b.ambient() && a.vertices() == b.vertices();
}

Polytope convex_hull(int ambient, const QMat& pts) {
  Polytope p(ambient);
  std::set<QVec, VecLess> uniq;
  for (const QVec& x : pts) {
    if (static_cast<int>(x.size()) != ambient) throw std::invalid_argument("convex_hull: dim mismatch");
    uniq.insert(x);
  }
  if (uniq.empty()) return p;

  QMat cand(uniq.begin(), uniq.end());
  // A point is kept iff it is not a convex combination of the other current
  // points; removing a redundant point never changes the hull, so a single
  // sweep with immediate removal is sound.
  for (size_t i = 0; i < cand.size();) {
    QMat others;
    for (size_t j = 0; j < cand.size(); ++j)
      if (j != i) others.push_back(cand[j]);
    if (!others.empty() && convex_combination(cand[i], others)) {
      cand.erase(cand.begin() + i);
    } else {
      ++i;
    }
  }
  p.verts_ = std::move(cand);
  p.dim_ = affine_dim(p.verts_);

  const QVec& v0 = p.verts_[0];
  QMat dirs;
  for (size_t i = 1; i < p.verts_.size(); ++i) dirs.push_back(vsub(p.verts_[i], v0));

  for (QVec& a : nullspace(dirs.empty() ? QMat{QVec(ambient)} : dirs)) {
    a = primitive(a);
    p.eqs_.push_back(scale_coprime({a, -dot(a, v0)}));
  }
  std::sort(p.eqs_.begin(), p.eqs_.end());

  if (p.dim_ >= 1) {
    QMat span = row_space_basis(dirs);  // rows: basis of the direction space, size dim
    int d = p.dim_;
    size_t m = p.verts_.size();
    std::set<std::pair<QVec, Rat>> seen;
    // Every facet hyperplane is spanned (inside the affine hull) by d of the
    // vertices, so scanning d-subsets finds them all.
    auto emit = [&](const QVec& a, const Rat& c) {
      bool lo = true, hi = true;
      for (const QVec& v : p.verts_) {
        int s = (dot(a, v) - c).sign();
        if (s < 0) lo = false;
        if (s > 0) hi = false;
      }
      if (lo == hi) return;  // mixed signs, or all on the hyperplane
      HalfSpace h = lo ? HalfSpace{a, -c} : HalfSpace{a, -c}.flipped();
      h = scale_coprime(std::move(h));
      if (seen.emplace(h.normal, h.offset).second) p.facets_.push_back(std::move(h));
    };
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    auto rec = [&](auto&& self, size_t start) -> void {
      if (static_cast<int>(cur.size()) == d) {
        subsets.push_back(cur);
        return;
      }
      for (size_t i = start; i < m; ++i) {
        cur.push_back(static_cast<int>(i));
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    for (const std::vector<int>& sub : subsets) {
      // Normal a = span^T lambda with a orthogonal to the subset's directions.
      QMat sys;
      for (size_t t = 1; t < sub.size(); ++t) {
        QVec dir = vsub(p.verts_[sub[t]], p.verts_[sub[0]]);
        QVec row;
        row.reserve(span.size());
        for (const QVec& w : span) row.push_back(dot(dir, w));
        sys.push_back(std::move(row));
      }
      if (sys.empty()) sys.push_back(QVec(span.size()));
      QMat lam = nullspace(sys);
      if (lam.size() != 1) continue;
      QVec a(ambient);
      for (size_t k = 0; k < span.size(); ++k) a = vadd(a, vscale(lam[0][k], span[k]));
      if (is_zero_vec(a)) continue;
      emit(a, dot(a, p.verts_[sub[0]]));
    }
    std::sort(p.facets_.begin(), p.facets_.end());
  }
  return p;
}

Polytope intersect_halfspace(const Polytope& p, const HalfSpace& h) {
  if (p.empty()) return Polytope(p.ambient());
  if (static_cast<int>(h.normal.size()) != p.ambient())
    throw std::invalid_argument("intersect_halfspace: dim mismatch");
  std::vector<int> sign;
  sign.reserve(p.vertices().size());
  bool any_neg = false, any_pos = false;
  for (const QVec& v : p.vertices()) {
    int s = h.eval(v).sign();
    sign.push_back(s);
    if (s < 0) any_neg = true;
    if (s > 0) any_pos = true;
  }
  if (!any_neg) return p;
  QMat kept;
  for (size_t i = 0; i < p.vertices().size(); ++i)
    if (sign[i] >= 0) kept.push_back(p.vertices()[i]);
  if (any_pos) {
    for (size_t i = 0; i < p.vertices().size(); ++i) {
      if (sign[i] <= 0) continue;
      for (size_t j = 0; j < p.vertices().size(); ++j) {
        if (sign[j] >= 0) continue;
        const QVec &u = p.vertices()[i], &w = p.vertices()[j];
        Rat hu = h.eval(u), hw = h.eval(w);
        Rat t = hu / (hu - hw);
        kept.push_back(vadd(u, vscale(t, vsub(w, u))));
      }
    }
  }
  return convex_hull(p.ambient(), kept);
}

Polytope intersect(const Polytope& p, const Polytope& q) {
  if (p.ambient() != q.ambient()) throw std::invalid_argument("intersect: ambient mismatch");
  if (p.empty() || q.empty()) return Polytope(p.ambient());
  Polytope r = p;
  for (const HalfSpace& h : q.hrep()) {
    r = intersect_halfspace(r, h);
    if (r.empty()) break;
  }
  return r;
}

Polytope from_halfspaces(int ambient, const std::vector<HalfSpace>& hs) {
  for (const HalfSpace& h : hs)
    if (static_cast<int>(h.normal.size()) != ambient)
      throw std::invalid_argument("from_halfspaces: dim mismatch");
  if (ambient == 0) {
    for (const HalfSpace& h : hs)
      if (h.offset.sign() < 0) return Polytope(0);
    return convex_hull(0, QMat{QVec{}});
  }

  // Feasibility of {x : a.x + b >= 0} with x free: x = u - v, slack s.
  size_t m = hs.size(), n = static_cast<size_t>(ambient);
  {
    QMat a(m, QVec(2 * n + m));
    QVec b(m);
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < n; ++j) {
        a[i][j] = hs[i].normal[j];
        a[i][n + j] = -hs[i].normal[j];
      }
      a[i][2 * n + i] = Rat(-1);
      b[i] = -hs[i].offset;
    }
    if (!lp_nonneg_solve(a, b)) return Polytope(ambient);
  }
  // Nonzero recession direction => unbounded; not representable here.
  for (size_t j = 0; j < n; ++j) {
    for (int sgn_dir : {1, -1}) {
      QMat a(m + 1, QVec(2 * n + m));
      QVec b(m + 1);
      for (size_t i = 0; i < m; ++i) {
        for (size_t k = 0; k < n; ++k) {
          a[i][k] = hs[i].normal[k];
          a[i][n + k] = -hs[i].normal[k];
        }
        a[i][2 * n + i] = Rat(-1);
      }
      a[m][j] = Rat(1);
      a[m][n + j] = Rat(-1);
      b[m] = Rat(sgn_dir);
      if (lp_nonneg_solve(a, b))
        throw std::invalid_argument("from_halfspaces: unbounded region");
    }
  }

  // Bounded and feasible: every vertex solves some n of the boundary
  // equations, so n-subsets enumerate all candidates.
  std::set<QVec, VecLess> cand;
  std::vector<int> idx;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (idx.size() == n) {
      QMat sys;
      QVec rhs;
      for (int i : idx) {
        sys.push_back(hs[i].normal);
        rhs.push_back(-hs[i].offset);
      }
      QMat chk(sys);
      if (rref(chk).size() != n) return;
      auto x = solve(sys, rhs);
      if (!x) return;
      for (const HalfSpace& h : hs)
        if (h.eval(*x).sign() < 0) return;
      cand.insert(*x);
      return;
    }
    for (size_t i = start; i < m; ++i) {
      idx.push_back(static_cast<int>(i));
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return convex_hull(ambient, QMat(cand.begin(), cand.end()));
}

std::vector<Polytope> faces(const Polytope& p, int k) {
  std::vector<Polytope> out;
  if (p.empty() || k < 0 || k > p.dim()) return out;
  if (k == p.dim()) {
    out.push_back(p);
    return out;
  }
  size_t m = p.vertices().size();
  std::set<std::vector<int>> closed;
  std::vector<std::vector<int>> frontier;
  for (const HalfSpace& f : p.facets()) {
    std::vector<int> on;
    for (size_t i = 0; i < m; ++i)
      if (f.eval(p.vertices()[i]).sign() == 0) on.push_back(static_cast<int>(i));
    if (!on.empty() && closed.insert(on).second) frontier.push_back(on);
  }
  // Faces are exactly the intersections of facets; close the incidence sets
  // under pairwise intersection.
  std::vector<std::vector<int>> all(frontier);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const std::vector<int>& s : frontier) {
      for (const std::vector<int>& t : all) {
        std::vector<int> inter;
        std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(inter));
        if (!inter.empty() && closed.insert(inter).second) next.push_back(inter);
      }
    }
    for (const std::vector<int>& s : next) all.push_back(s);
    frontier = std::move(next);
  }
  for (const std::vector<int>& s : closed) {
    QMat pts;
    for (int i : s) pts.push_back(p.vertices()[i]);
    Polytope f = convex_hull(p.ambient(), pts);
    if (f.dim() == k) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const Polytope& a, const Polytope& b) {
    return std::lexicographical_compare(a.vertices().begin(), a.vertices().end(),
                                        b.vertices().begin(), b.vertices().end(), lex_less);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_face_of(const Polytope& f, const Polytope& p) {
  if (f.empty()) return true;
  if (p.empty()) throw std::invalid_argument("is_face_of: empty ambient polytope");
  for (const QVec& v : f.vertices())
    if (!p.contains(v)) throw std::invalid_argument("is_face_of: not a subset");
  if (f == p) return true;
  // S: facets of p containing f; G: vertices of p on all of S. f is a face
  // iff f is exactly G.
  std::vector<const HalfSpace*> s;
  for (const HalfSpace& h : p.facets()) {
    bool on = true;
    for (const QVec& v : f.vertices())
      if (h.eval(v).sign() != 0) {
        on = false;
        break;
      }
    if (on) s.push_back(&h);
  }
  if (s.empty()) return false;
  QMat g;
  for (const QVec& v : p.vertices()) {
    bool on = true;
    for (const HalfSpace* h : s)
      if (h->eval(v).sign() != 0) {
        on = false;
        break;
      }
    if (on) g.push_back(v);
  }
  return g == f.vertices();
}

std::vector<Polytope> subtract_cover(const Polytope& c, const std::vector<Polytope>& parts) {
  std::vector<Polytope> pieces;
  if (c.empty()) return pieces;
  pieces.push_back(c);
  int full = c.dim();
  for (const Polytope& part : parts) {
    if (part.empty()) continue;
    std::vector<Polytope> next;
    for (const Polytope& piece : pieces) {
      Polytope overlap = intersect(piece, part);
      if (overlap.dim() < piece.dim()) {
        next.push_back(piece);
        continue;
      }
      // Split piece along part's half-spaces: the j-th fragment satisfies
      // the first j-1 constraints and violates the j-th; the remainder
      // (inside all of them) is covered by part and is dropped.
      Polytope running = piece;
      for (const HalfSpace& h : part.hrep()) {
        Polytope outside = intersect_halfspace(running, h.flipped());
        if (outside.dim() == full) next.push_back(outside);
        running = intersect_halfspace(running, h);
        if (running.empty()) break;
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

bool covers_exactly(const Polytope& c, const std::vector<Polytope>& parts) {
  if (c.empty()) {
    for (const Polytope& part : parts)
      if (!part.empty()) return false;
    return true;
  }
  for (const Polytope& part : parts)
    for (const QVec& v : part.vertices())
      if (!c.contains(v)) return false;
  // Parts are closed and inside c, so "uncovered set has measure zero"
  // already implies the union is all of c.
  return subtract_cover(c, parts).empty();
}

bool ConeHRep::contains(const QVec& x) const {
  for (const QVec& e : eqs)
    if (dot(e, x).sign() != 0) return false;
  for (const QVec& a : ineqs)
    if (dot(a, x).sign() < 0) return false;
  return true;
}

ConeHRep cone_hrep(int ambient, const QMat& gens) {
  ConeHRep rep;
  QMat gs;
  for (const QVec& g : gens) {
    if (static_cast<int>(g.size()) != ambient) throw std::invalid_argument("cone_hrep: dim mismatch");
    if (!is_zero_vec(g)) gs.push_back(g);
  }
  if (gs.empty()) {
    for (int i = 0; i < ambient; ++i) {
      QVec e(ambient);
      e[i] = Rat(1);
      rep.eqs.push_back(std::move(e));
    }
    return rep;
  }
  for (QVec& a : nullspace(gs)) rep.eqs.push_back(primitive(a));
  std::sort(rep.eqs.begin(), rep.eqs.end(), lex_less);

  QMat span = row_space_basis(gs);
  int d = static_cast<int>(span.size());
  QMat lin;
  for (const QVec& g : gs) {
    QVec neg = vscale(Rat(-1), g);
    if (cone_combination(neg, gs)) lin.push_back(g);
  }
  QMat lin_basis = row_space_basis(lin);
  int ell = static_cast<int>(lin_basis.size());
  if (d - 1 - ell < 0) return rep;

  std::set<std::pair<QVec, Rat>> seen;
  std::vector<int> idx;
  size_t need = static_cast<size_t>(d - 1 - ell);
  auto emit = [&](QVec a) {
    bool lo = true, hi = true;
    for (const QVec& g : gs) {
      int s = dot(a, g).sign();
      if (s < 0) lo = false;
      if (s > 0) hi = false;
    }
    if (lo == hi) return;
    if (!lo)
      for (Rat& c : a) c = -c;
    a = primitive_oriented(a);
    if (seen.emplace(a, Rat(0)).second) rep.ineqs.push_back(std::move(a));
  };
  auto rec = [&](auto&& self, size_t start) -> void {
    if (idx.size() == need) {
      QMat sys;
      for (int i : idx) {
        QVec row;
        for (const QVec& w : span) row.push_back(dot(gs[i], w));
        sys.push_back(std::move(row));
      }
      for (const QVec& lb : lin_basis) {
        QVec row;
        for (const QVec& w : span) row.push_back(dot(lb, w));
        sys.push_back(std::move(row));
      }
      if (sys.empty()) sys.push_back(QVec(span.size()));
      QMat lam = nullspace(sys);
      if (lam.size() == 1) {
        QVec a(ambient);
        for (size_t k = 0; k < span.size(); ++k) a = vadd(a, vscale(lam[0][k], span[k]));
        if (!is_zero_vec(a)) emit(std::move(a));
      }
      return;
    }
    for (size_t i = start; i < gs.size(); ++i) {
      idx.push_back(static_cast<int>(i));
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(rep.ineqs.begin(), rep.ineqs.end(), lex_less);
  return rep;
}

}  // namespace adjointkit
