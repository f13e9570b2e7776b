#include "qmzv/linalg.hpp"

#include <algorithm>

#include "qmzv/errors.hpp"

namespace qmzv {

Echelon row_reduce(Matrix m, int ncols) {
  Echelon e;
  std::size_t r = 0;
  for (int c = 0; c < ncols && r < m.size(); ++c) {
    auto sc = static_cast<std::size_t>(c);
    std::size_t p = r;
    while (p < m.size() && m[p][sc] == 0) ++p;
    if (p == m.size()) {
      e.free.push_back(c);
      continue;
    }
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][sc];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][sc] == 0) continue;
      Rational f = m[i][sc];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  for (int c = e.pivots.empty() ? 0 : e.pivots.back() + 1; c < ncols; ++c)
    if (std::find(e.free.begin(), e.free.end(), c) == e.free.end()) e.free.push_back(c);
  std::sort(e.free.begin(), e.free.end());
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

std::optional<Row> solve(const Matrix& a, const Row& b, const std::vector<Rational>& free_values,
                         std::vector<int>* free_columns) {
  if (a.size() != b.size()) throw DomainError("solve: row count mismatch");
  int ncols = a.empty() ? 0 : static_cast<int>(a[0].size());
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = row_reduce(aug, ncols + 1);
  for (int p : e.pivots)
    if (p == ncols) return std::nullopt;
  std::vector<int> free;
  for (int c : e.free)
    if (c < ncols) free.push_back(c);
  if (free_columns) *free_columns = free;
  Row x(static_cast<std::size_t>(ncols), 0);
  for (std::size_t i = 0; i < free.size() && i < free_values.size(); ++i)
    x[static_cast<std::size_t>(free[i])] = free_values[i];
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    auto p = static_cast<std::size_t>(e.pivots[i]);
    Rational v = e.rows[i][static_cast<std::size_t>(ncols)];
    for (int c : free) v -= e.rows[i][static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
    x[p] = v;
  }
  return x;
}

void normalize_integral(Row& v) {
  Integer l = 1;
  for (const auto& x : v)
    if (x != 0) l = lcm(l, Integer(x.get_den()));
  Integer g = 0;
  for (auto& x : v) {
    x *= l;
    if (x != 0) g = gcd(g, Integer(x.get_num()));
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
}

Matrix kernel(const Matrix& a, int ncols) {
  Echelon e = row_reduce(a, ncols);
  Matrix basis;
  for (int f : e.free) {
    Row v(static_cast<std::size_t>(ncols), 0);
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i)
      v[static_cast<std::size_t>(e.pivots[i])] = -e.rows[i][static_cast<std::size_t>(f)];
    normalize_integral(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qmzv
