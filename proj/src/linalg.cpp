#include "adjointkit/linalg.hpp"

#include <stdexcept>

namespace adjointkit {

QVec qvec(std::initializer_list<long long> xs) {
  QVec v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

bool lex_less(const QVec& a, const QVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec vadd(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vadd: size mismatch");
  QVec r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

QVec vsub(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vsub: size mismatch");
  QVec r(a);
  for (size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

QVec vscale(const Rat& c, const QVec& a) {
  QVec r(a);
  for (Rat& x : r) x *= c;
  return r;
}

bool is_zero_vec(const QVec& a) {
  for (const Rat& x : a)
    if (x.sign() != 0) return false;
  return true;
}

QMat identity(int n) {
  QMat m(n, QVec(n));
  for (int i = 0; i < n; ++i) m[i][i] = Rat(1);
  return m;
}

QMat transpose(const QMat& m) {
  if (m.empty()) return {};
  QMat t(m[0].size(), QVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

QMat mat_mul(const QMat& a, const QMat& b) {
  if (a.empty() || b.empty()) return {};
  size_t n = a.size(), k = b.size(), p = b[0].size();
  QMat r(n, QVec(p));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw std::invalid_argument("mat_mul: shape mismatch");
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t].sign() == 0) continue;
      for (size_t j = 0; j < p; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  }
  return r;
}

QVec mat_vec(const QMat& a, const QVec& x) {
  QVec r;
  r.reserve(a.size());
  for (const QVec& row : a) r.push_back(dot(row, x));
  return r;
}

std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].sign() == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].sign() == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(QMat m) { return static_cast<int>(rref(m).size()); }

std::optional<QVec> solve(const QMat& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve: shape mismatch");
  if (a.empty()) return QVec{};
  size_t cols = a[0].size();
  QMat aug(a);
  for (size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
  std::vector<int> piv = rref(aug);
  for (int c : piv)
    if (static_cast<size_t>(c) == cols) return std::nullopt;
  QVec x(cols);
  for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug[k][cols];
  return x;
}

QMat nullspace(const QMat& a) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  QMat m(a);
  std::vector<int> piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  QMat basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    QVec v(cols);
    v[f] = Rat(1);
    for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QMat> inverse(const QMat& a) {
  size_t n = a.size();
  QMat aug(a);
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("inverse: not square");
    for (size_t j = 0; j < n; ++j) aug[i].push_back(Rat(i == j ? 1 : 0));
  }
  std::vector<int> piv = rref(aug);
  if (piv.size() != n) return std::nullopt;
  QMat inv(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

int affine_dim(const QMat& pts) {
  if (pts.empty()) return -1;
  QMat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vsub(pts[i], pts[0]));
  return rank(diffs);
}

namespace {

QVec primitive_impl(const QVec& v, bool keep_sign) {
  if (is_zero_vec(v)) return QVec(v.size());
  mpz_class l = 1, g = 0;
  for (const Rat& x : v) {
    mpz_class d = x.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<mpz_class> ints;
  ints.reserve(v.size());
  for (const Rat& x : v) {
    mpz_class n = x.num() * (l / x.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  if (!keep_sign) {
    for (const mpz_class& n : ints) {
      if (n != 0) {
        if (sgn(n) < 0) g = -g;
        break;
      }
    }
  }
  QVec r;
  r.reserve(v.size());
  for (const mpz_class& n : ints) r.push_back(Rat(mpz_class(n / g)));
  return r;
}

}  // namespace

QVec primitive(const QVec& v) { return primitive_impl(v, false); }

QVec primitive_oriented(const QVec& v) { return primitive_impl(v, true); }

}  // namespace adjointkit
