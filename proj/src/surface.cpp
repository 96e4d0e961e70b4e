#include "adjointkit/surface.hpp"

#include "adjointkit/linalg.hpp"
#include "adjointkit/lp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace adjointkit {

void validate_surface(const NumericalSurface& s) {
  if (s.r < 1) throw std::invalid_argument("surface: needs at least one tracked class");
  auto check_rows = [&](const QMat& m, const char* what) {
    for (const QVec& row : m)
      if (static_cast<int>(row.size()) != s.r)
        throw std::invalid_argument(std::string("surface: ") + what + " arity mismatch");
  };
  if (static_cast<int>(s.curves.size()) != s.r || static_cast<int>(s.q.size()) != s.r ||
      static_cast<int>(s.k.size()) != s.r)
    throw std::invalid_argument("surface: arity mismatch");
  check_rows(s.q, "intersection matrix");
  check_rows(s.effective, "effective cone");
  check_rows(s.mori, "curve cone");
  for (int i = 0; i < s.r; ++i)
    for (int j = i + 1; j < s.r; ++j)
      if (s.q[i][j] != s.q[j][i]) throw std::invalid_argument("surface: intersection matrix not symmetric");
  std::set<std::string> names(s.curves.begin(), s.curves.end());
  if (static_cast<int>(names.size()) != s.r)
    throw std::invalid_argument("surface: duplicate curve names");
}

Rat intersect(const NumericalSurface& s, const QVec& d, const QVec& e) {
  return dot(d, mat_vec(s.q, e));
}

bool is_nef(const NumericalSurface& s, const QVec& d) {
  for (const QVec& m : s.mori)
    if (intersect(s, d, m).sign() < 0) return false;
  return true;
}

bool is_pseff(const NumericalSurface& s, const QVec& d) {
  return cone_combination(d, s.effective).has_value();
}

namespace {

Rat det(QMat a) {
  int n = static_cast<int>(a.size());
  Rat d(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int rr = c; rr < n; ++rr)
      if (a[rr][c].sign() != 0) {
        piv = rr;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    Rat inv = Rat(1) / a[c][c];
    for (int rr = c + 1; rr < n; ++rr) {
      if (a[rr][c].sign() == 0) continue;
      Rat f = a[rr][c] * inv;
      for (int cc = c; cc < n; ++cc) a[rr][cc] -= f * a[c][cc];
    }
  }
  return d;
}

QVec curve_degrees(const NumericalSurface& s, const QVec& d) { return mat_vec(s.q, d); }

}  // namespace

ZariskiResult zariski(const NumericalSurface& s, const QVec& d, const std::vector<int>& scan_order) {
  validate_surface(s);
  if (static_cast<int>(d.size()) != s.r) throw std::invalid_argument("zariski: arity mismatch");
  std::vector<int> order(scan_order);
  if (order.empty()) {
    order.resize(s.r);
    std::iota(order.begin(), order.end(), 0);
  } else {
    std::vector<int> sorted(order);
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < s.r; ++i)
      if (sorted[i] != i) throw std::invalid_argument("zariski: scan order must be a permutation");
  }
  if (!is_pseff(s, d)) throw std::invalid_argument("zariski: divisor not pseudoeffective");

  std::vector<int> support;
  QVec nu, p(d);
  for (;;) {
    size_t m = support.size();
    if (m > 0) {
      QMat gram(m, QVec(m));
      QVec rhs(m);
      QVec dc = curve_degrees(s, d);
      for (size_t a = 0; a < m; ++a) {
        rhs[a] = dc[support[a]];
        for (size_t b = 0; b < m; ++b) gram[a][b] = s.q[support[a]][support[b]];
      }
      for (size_t lead = 1; lead <= m; ++lead) {
        QMat minor(lead, QVec(lead));
        for (size_t a = 0; a < lead; ++a)
          for (size_t b = 0; b < lead; ++b) minor[a][b] = gram[a][b];
        int expect = (lead % 2 == 0) ? 1 : -1;
        if (det(minor).sign() != expect)
          throw inconsistency_error("zariski: support Gram matrix not negative definite");
      }
      auto sol = solve(gram, rhs);
      if (!sol) throw inconsistency_error("zariski: singular support Gram matrix");
      nu = *sol;
      for (const Rat& v : nu)
        if (v.sign() < 0) throw inconsistency_error("zariski: negative multiplicity");
      p = d;
      for (size_t a = 0; a < m; ++a) {
        QVec unit(s.r, Rat(0));
        unit[support[a]] = nu[a];
        p = vsub(p, unit);
      }
    }
    QVec pc = curve_degrees(s, p);
    int found = -1;
    for (int i : order) {
      if (pc[i].sign() < 0) {
        if (s.q[i][i].sign() >= 0)
          throw inconsistency_error("zariski: negative degree on a non-negative class");
        if (std::find(support.begin(), support.end(), i) != support.end())
          throw inconsistency_error("zariski: support class with negative degree");
        found = i;
        break;
      }
    }
    if (found < 0) break;
    support.push_back(found);
    std::sort(support.begin(), support.end());
  }

  ZariskiResult res;
  res.p = p;
  res.n = vsub(d, p);
  for (size_t a = 0; a < support.size(); ++a) {
    if (nu[a].sign() > 0) {
      res.support.push_back(support[a]);
      res.nu.push_back(nu[a]);
    }
  }
  QVec pc = curve_degrees(s, res.p);
  for (int i : res.support)
    if (pc[i].sign() != 0) throw inconsistency_error("zariski: nef part meets its support");
  if (!is_nef(s, res.p)) throw inconsistency_error("zariski: nef part is not nef");
  return res;
}

ContractionResult contract(const NumericalSurface& s, int j) {
  validate_surface(s);
  if (j < 0 || j >= s.r) throw std::invalid_argument("contract: index out of range");
  if (s.q[j][j].sign() >= 0)
    throw std::invalid_argument("contract: class has non-negative self-intersection");
  int r2 = s.r - 1;
  auto keep = [&](int i) { return i < j ? i : i + 1; };

  ContractionResult res;
  res.pushforward.assign(r2, QVec(s.r, Rat(0)));
  res.pullback.assign(s.r, QVec(r2, Rat(0)));
  for (int i = 0; i < r2; ++i) {
    res.pushforward[i][keep(i)] = Rat(1);
    res.pullback[keep(i)][i] = Rat(1);
    res.pullback[j][i] = -s.q[keep(i)][j] / s.q[j][j];
  }

  NumericalSurface t;
  t.r = r2;
  for (int i = 0; i < r2; ++i) t.curves.push_back(s.curves[keep(i)]);
  t.q.assign(r2, QVec(r2));
  for (int a = 0; a < r2; ++a)
    for (int b = 0; b < r2; ++b)
      t.q[a][b] = s.q[keep(a)][keep(b)] - s.q[keep(a)][j] * s.q[keep(b)][j] / s.q[j][j];
  t.k.resize(r2);
  for (int i = 0; i < r2; ++i) t.k[i] = s.k[keep(i)];

  auto push_rows = [&](const QMat& rows) {
    std::set<QVec> out;
    for (const QVec& row : rows) {
      QVec img(r2);
      for (int i = 0; i < r2; ++i) img[i] = row[keep(i)];
      if (!is_zero_vec(img)) out.insert(img);
    }
    return QMat(out.begin(), out.end());
  };
  t.effective = push_rows(s.effective);
  t.mori = push_rows(s.mori);
  res.surface = std::move(t);
  return res;
}

MMPResult run_mmp(const NumericalSurface& s, const QVec& delta) {
  validate_surface(s);
  if (static_cast<int>(delta.size()) != s.r) throw std::invalid_argument("run_mmp: arity mismatch");
  MMPResult res;
  res.final_surface = s;
  res.final_delta = delta;
  res.orig_index.resize(s.r);
  std::iota(res.orig_index.begin(), res.orig_index.end(), 0);
  for (;;) {
    const NumericalSurface& cur = res.final_surface;
    QVec adj = vadd(cur.k, res.final_delta);
    if (is_nef(cur, adj)) {
      res.outcome = "minimal-model";
      return res;
    }
    QVec deg = curve_degrees(cur, adj);
    int pick = -1;
    for (int i = 0; i < cur.r; ++i)
      if (deg[i].sign() < 0 && cur.q[i][i].sign() < 0) {
        pick = i;
        break;
      }
    if (pick < 0) {
      res.outcome = "fiber-type";
      return res;
    }
    ContractionResult c = contract(cur, pick);
    MMPStep step;
    step.index = pick;
    step.orig = res.orig_index[pick];
    step.pushforward = c.pushforward;
    res.steps.push_back(std::move(step));
    res.final_delta = mat_vec(c.pushforward, res.final_delta);
    res.orig_index.erase(res.orig_index.begin() + pick);
    res.final_surface = std::move(c.surface);
  }
}

namespace {

// Affine family d(t) = base + cols * t over the chart: base and the column
// list are coefficient vectors over the current tracked classes.
struct DivisorFamily {
  QVec base;
  QMat cols;  // one column per chart coordinate, stored as vectors
};

DivisorFamily family_of(const NumericalSurface& s, const QMat& deltas) {
  size_t n = deltas.size();
  DivisorFamily f;
  f.base = vadd(s.k, deltas[n - 1]);
  for (size_t i = 0; i + 1 < n; ++i) f.cols.push_back(vsub(deltas[i], deltas[n - 1]));
  return f;
}

QVec family_at(const DivisorFamily& f, const QVec& t) {
  QVec d(f.base);
  for (size_t i = 0; i < f.cols.size(); ++i) d = vadd(d, vscale(t[i], f.cols[i]));
  return d;
}

// Chart-space affine functional of d(t) . c_j.
std::pair<QVec, Rat> wall_functional(const NumericalSurface& s, const DivisorFamily& f, int j) {
  QVec row = s.q[j];
  Rat off = dot(row, f.base);
  QVec normal(f.cols.size(), Rat(0));
  for (size_t i = 0; i < f.cols.size(); ++i) normal[i] = dot(row, f.cols[i]);
  return {normal, off};
}

struct WlcContext {
  const NumericalSurface* start;
  const DivisorFamily* start_family;
  std::vector<Chamber>* out;
};

void wlc_cell(const WlcContext& ctx, Polytope cell, const NumericalSurface& cur,
              const DivisorFamily& fam, std::vector<int> orig, std::vector<int> contracted) {
  if (cell.empty()) return;
  for (;;) {
    // Split on the first wall whose sign is strictly mixed over the cell.
    int split = -1;
    std::pair<QVec, Rat> wall;
    for (int j = 0; j < cur.r; ++j) {
      if (cur.q[j][j].sign() >= 0) continue;
      auto [normal, off] = wall_functional(cur, fam, j);
      bool neg = false, pos = false;
      for (const QVec& v : cell.vertices()) {
        int sg = (dot(normal, v) + off).sign();
        if (sg < 0) neg = true;
        if (sg > 0) pos = true;
      }
      if (neg && pos) {
        split = j;
        wall = {normal, off};
        break;
      }
    }
    if (split >= 0) {
      HalfSpace h{wall.first, wall.second};
      wlc_cell(ctx, intersect_halfspace(cell, h), cur, fam, orig, contracted);
      wlc_cell(ctx, intersect_halfspace(cell, h.flipped()), cur, fam, orig, contracted);
      return;
    }
    // No mixed wall: contract the first class negative on the cell interior.
    int pick = -1;
    for (int j = 0; j < cur.r; ++j) {
      if (cur.q[j][j].sign() >= 0) continue;
      auto [normal, off] = wall_functional(cur, fam, j);
      bool any_neg = false, all_le = true;
      for (const QVec& v : cell.vertices()) {
        int sg = (dot(normal, v) + off).sign();
        if (sg < 0) any_neg = true;
        if (sg > 0) all_le = false;
      }
      if (all_le && any_neg) {
        pick = j;
        break;
      }
    }
    if (pick < 0) break;
    ContractionResult c = contract(cur, pick);
    DivisorFamily f2;
    f2.base = mat_vec(c.pushforward, fam.base);
    for (const QVec& col : fam.cols) f2.cols.push_back(mat_vec(c.pushforward, col));
    contracted.push_back(orig[pick]);
    orig.erase(orig.begin() + pick);
    std::sort(contracted.begin(), contracted.end());
    wlc_cell(ctx, std::move(cell), c.surface, f2, std::move(orig), std::move(contracted));
    return;
  }
  // Terminal cell: verify a minimal model on every vertex, plus
  // pseudoeffectivity upstairs.
  for (const QVec& v : cell.vertices()) {
    if (!is_pseff(*ctx.start, family_at(*ctx.start_family, v)))
      throw inconsistency_error("wlc: non-pseudoeffective vertex inside the region");
    if (!is_nef(cur, family_at(fam, v)))
      throw inconsistency_error("wlc: fiber-type behavior inside the region");
  }
  ctx.out->push_back({std::move(cell), std::move(contracted)});
}

}  // namespace

Polytope pseff_region(const NumericalSurface& s, const QMat& deltas, const Polytope& chart) {
  validate_surface(s);
  if (deltas.empty()) throw std::invalid_argument("pseff_region: no boundary rows");
  for (const QVec& row : deltas)
    if (static_cast<int>(row.size()) != s.r)
      throw std::invalid_argument("pseff_region: boundary arity mismatch");
  int nchart = static_cast<int>(deltas.size()) - 1;
  if (chart.ambient() != nchart) throw std::invalid_argument("pseff_region: chart arity mismatch");
  if (chart.empty()) return chart;

  DivisorFamily fam = family_of(s, deltas);
  ConeHRep eff = cone_hrep(s.r, s.effective);
  std::vector<HalfSpace> hs = chart.hrep();
  auto add = [&](const QVec& h, bool equality) {
    QVec normal(nchart, Rat(0));
    for (int i = 0; i < nchart; ++i) normal[i] = dot(h, fam.cols[i]);
    HalfSpace half{normal, dot(h, fam.base)};
    hs.push_back(half);
    if (equality) hs.push_back(half.flipped());
  };
  for (const QVec& h : eff.ineqs) add(h, false);
  for (const QVec& h : eff.eqs) add(h, true);
  return from_halfspaces(nchart, hs);
}

std::vector<Chamber> wlc_decomposition(const NumericalSurface& s, const QMat& deltas,
                                       const Polytope& chart) {
  Polytope region = pseff_region(s, deltas, chart);
  std::vector<Chamber> raw;
  if (region.empty()) return raw;
  DivisorFamily fam = family_of(s, deltas);
  WlcContext ctx{&s, &fam, &raw};
  std::vector<int> orig(s.r);
  std::iota(orig.begin(), orig.end(), 0);
  wlc_cell(ctx, region, s, fam, orig, {});

  // Merge chambers with the same contraction set when their union is
  // convex; otherwise keep the pieces.
  std::map<std::vector<int>, std::vector<Chamber>> groups;
  for (Chamber& c : raw) groups[c.contracted].push_back(std::move(c));
  std::vector<Chamber> out;
  for (auto& [key, cells] : groups) {
    if (cells.size() == 1) {
      out.push_back(std::move(cells[0]));
      continue;
    }
    QMat pts;
    for (const Chamber& c : cells)
      for (const QVec& v : c.cell.vertices()) pts.push_back(v);
    Polytope hull = convex_hull(cells[0].cell.ambient(), pts);
    std::vector<Polytope> parts;
    for (const Chamber& c : cells) parts.push_back(c.cell);
    if (covers_exactly(hull, parts)) {
      out.push_back({std::move(hull), key});
    } else {
      for (Chamber& c : cells) out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const Chamber& a, const Chamber& b) {
    if (a.contracted != b.contracted) return a.contracted < b.contracted;
    return std::lexicographical_compare(a.cell.vertices().begin(), a.cell.vertices().end(),
                                        b.cell.vertices().begin(), b.cell.vertices().end(),
                                        lex_less);
  });
  return out;
}

NumericalSurface toric_surface(const std::vector<ZVec>& rays, const QVec& k) {
  int m = static_cast<int>(rays.size());
  if (m < 3) throw std::invalid_argument("toric: need at least three rays");
  if (static_cast<int>(k.size()) != m) throw std::invalid_argument("toric: canonical arity mismatch");
  for (const ZVec& v : rays) {
    if (v.size() != 2) throw std::invalid_argument("toric: rays must be planar");
    long long g = std::gcd(std::abs(v[0]), std::abs(v[1]));
    if (g != 1) throw std::invalid_argument("toric: rays must be primitive");
  }
  auto det2 = [&](int i, int j) {
    return rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0];
  };
  for (int i = 0; i < m; ++i)
    if (det2(i, (i + 1) % m) != 1)
      throw std::invalid_argument("toric: fan must be smooth, complete, counterclockwise");

  NumericalSurface s;
  s.r = m;
  for (int i = 0; i < m; ++i) s.curves.push_back("C" + std::to_string(i + 1));
  s.q.assign(m, QVec(m, Rat(0)));
  for (int i = 0; i < m; ++i) {
    int prev = (i + m - 1) % m, next = (i + 1) % m;
    s.q[i][next] = Rat(1);
    s.q[next][i] = Rat(1);
    // v_prev + v_next = b v_i with b = -self-intersection.
    long long sx = rays[prev][0] + rays[next][0];
    long long sy = rays[prev][1] + rays[next][1];
    if (sx * rays[i][1] != sy * rays[i][0])
      throw std::invalid_argument("toric: fan must be smooth, complete, counterclockwise");
    long long b = rays[i][0] != 0 ? sx / rays[i][0] : sy / rays[i][1];
    s.q[i][i] = Rat(-b);
  }
  s.k = k;
  for (int i = 0; i < m; ++i) {
    QVec unit(m, Rat(0));
    unit[i] = Rat(1);
    s.effective.push_back(unit);
    s.mori.push_back(unit);
  }
  // Linear equivalences: the divisors of the two coordinate characters,
  // (<e_x, v_i>)_i and (<e_y, v_i>)_i, in both signs.
  for (int c = 0; c < 2; ++c) {
    QVec r(m, Rat(0));
    for (int i = 0; i < m; ++i) r[i] = Rat(rays[i][c]);
    r = primitive(r);
    s.effective.push_back(r);
    s.effective.push_back(vscale(Rat(-1), r));
  }
  validate_surface(s);
  return s;
}

Polytope toric_polygon(const std::vector<ZVec>& rays, const QVec& d) {
  if (rays.size() != d.size()) throw std::invalid_argument("toric: polygon arity mismatch");
  std::vector<HalfSpace> hs;
  for (size_t j = 0; j < rays.size(); ++j)
    hs.push_back({QVec{Rat(rays[j][0]), Rat(rays[j][1])}, d[j]});
  return from_halfspaces(2, hs);
}

}  // namespace adjointkit
