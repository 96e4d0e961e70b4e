#include "adjointkit/lp.hpp"

#include <stdexcept>

namespace adjointkit {

namespace {

// Phase-1 tableau. Rows are B^{-1}A with the rhs appended; basis holds the
// column index basic in each row. Bland's rule on both the entering and the
// leaving choice, so the walk cannot cycle.
struct Tableau {
  QMat t;
  std::vector<int> basis;
  int ncols;

  Rat reduced_cost(const std::vector<Rat>& cost, int j) const {
    Rat r = cost[j];
    for (size_t i = 0; i < t.size(); ++i) {
      if (cost[basis[i]].sign() != 0) r -= cost[basis[i]] * t[i][j];
    }
    return r;
  }
};

}  // namespace

std::optional<QVec> lp_nonneg_solve(const QMat& a, const QVec& b) {
  size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("lp_nonneg_solve: shape mismatch");
  size_t n = m == 0 ? 0 : a[0].size();
  if (m == 0) return QVec{};

  Tableau tab;
  tab.ncols = static_cast<int>(n + m);
  tab.t.assign(m, QVec(n + m + 1));
  tab.basis.resize(m);
  for (size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("lp_nonneg_solve: ragged matrix");
    bool flip = b[i].sign() < 0;
    for (size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? -a[i][j] : a[i][j];
    tab.t[i][n + i] = Rat(1);
    tab.t[i][n + m] = flip ? -b[i] : b[i];
    tab.basis[i] = static_cast<int>(n + i);
  }
  std::vector<Rat> cost(n + m);
  for (size_t j = n; j < n + m; ++j) cost[j] = Rat(1);

  for (;;) {
    int enter = -1;
    for (int j = 0; j < tab.ncols; ++j) {
      if (tab.reduced_cost(cost, j).sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (size_t i = 0; i < m; ++i) {
      if (tab.t[i][enter].sign() <= 0) continue;
      Rat ratio = tab.t[i][n + m] / tab.t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && tab.basis[i] < tab.basis[leave])) {
        leave = static_cast<int>(i);
        best = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("lp_nonneg_solve: phase-1 unbounded");
    Rat inv = Rat(1) / tab.t[leave][enter];
    for (size_t j = 0; j <= n + m; ++j) tab.t[leave][j] *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (static_cast<int>(i) == leave || tab.t[i][enter].sign() == 0) continue;
      Rat f = tab.t[i][enter];
      for (size_t j = 0; j <= n + m; ++j) tab.t[i][j] -= f * tab.t[leave][j];
    }
    tab.basis[leave] = enter;
  }

  Rat obj;
  for (size_t i = 0; i < m; ++i)
    if (tab.basis[i] >= static_cast<int>(n)) obj += tab.t[i][n + m];
  if (obj.sign() != 0) return std::nullopt;

  QVec x(n);
  for (size_t i = 0; i < m; ++i)
    if (tab.basis[i] < static_cast<int>(n)) x[tab.basis[i]] = tab.t[i][n + m];
  return x;
}

std::optional<QVec> convex_combination(const QVec& x, const QMat& pts) {
  if (pts.empty()) return std::nullopt;
  size_t n = x.size(), m = pts.size();
  QMat a(n + 1, QVec(m));
  QVec b(n + 1);
  for (size_t j = 0; j < m; ++j) {
    if (pts[j].size() != n) throw std::invalid_argument("convex_combination: dim mismatch");
    for (size_t i = 0; i < n; ++i) a[i][j] = pts[j][i];
    a[n][j] = Rat(1);
  }
  for (size_t i = 0; i < n; ++i) b[i] = x[i];
  b[n] = Rat(1);
  return lp_nonneg_solve(a, b);
}

std::optional<QVec> cone_combination(const QVec& x, const QMat& gens) {
  size_t n = x.size(), m = gens.size();
  if (m == 0) return is_zero_vec(x) ? std::optional<QVec>(QVec{}) : std::nullopt;
  QMat a(n, QVec(m));
  for (size_t j = 0; j < m; ++j) {
    if (gens[j].size() != n) throw std::invalid_argument("cone_combination: dim mismatch");
    for (size_t i = 0; i < n; ++i) a[i][j] = gens[j][i];
  }
  return lp_nonneg_solve(a, x);
}

std::optional<QVec> positive_functional(const QMat& gens) {
  if (gens.empty()) return QVec{};
  size_t n = gens[0].size(), m = gens.size();
  // Rows: (u - v) . g_k - s_k = 1 with u, v, s >= 0; w = u - v.
  QMat a(m, QVec(2 * n + m));
  QVec b(m, Rat(1));
  for (size_t k = 0; k < m; ++k) {
    if (gens[k].size() != n) throw std::invalid_argument("positive_functional: dim mismatch");
    for (size_t j = 0; j < n; ++j) {
      a[k][j] = gens[k][j];
      a[k][n + j] = -gens[k][j];
    }
    a[k][2 * n + k] = Rat(-1);
  }
  auto sol = lp_nonneg_solve(a, b);
  if (!sol) return std::nullopt;
  QVec w(n);
  for (size_t j = 0; j < n; ++j) w[j] = (*sol)[j] - (*sol)[n + j];
  return w;
}

}  // namespace adjointkit
