#include "glt/linalg.hpp"

#include <utility>

namespace glt::linalg {

Matrix zeros(size_t rows, size_t cols) { return Matrix(rows, Vec(cols, Q(0))); }

Echelon rref(Matrix m) {
  Echelon e;
  if (m.empty()) return e;
  const size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Q inv = 1 / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Q f = m[i][c];
      for (size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

size_t rank(const Matrix& m) {
  RowSpan s(m.empty() ? 0 : m[0].size());
  for (const auto& row : m) s.add(row);
  return s.rank();
}

Matrix kernel(const Matrix& m, size_t cols) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, Q(0));
    v[f] = 1;
    for (size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix transpose(const Matrix& m, size_t cols_if_empty) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : cols_if_empty;
  Matrix t = zeros(cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b, size_t b_cols) {
  Matrix r = zeros(a.size(), b_cols);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < b_cols; ++j)
        if (b[k][j] != 0) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

Vec RowSpan::reduce(Vec v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    const size_t c = pivots_[i];
    if (v[c] == 0) continue;
    Q f = v[c];
    for (size_t j = c; j < dim_; ++j)
      if (rows_[i][j] != 0) v[j] -= f * rows_[i][j];
  }
  return v;
}

bool RowSpan::contains(const Vec& v) const {
  Vec r = reduce(v);
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

bool RowSpan::add(const Vec& v) {
  Vec r = reduce(v);
  size_t c = 0;
  while (c < dim_ && r[c] == 0) ++c;
  if (c == dim_) return false;
  Q inv = 1 / r[c];
  for (size_t j = c; j < dim_; ++j) r[j] *= inv;
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i][c] == 0) continue;
    Q f = rows_[i][c];
    for (size_t j = c; j < dim_; ++j)
      if (r[j] != 0) rows_[i][j] -= f * r[j];
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(c);
  return true;
}

Z det(const std::vector<std::vector<i64>>& in) {
  const size_t n = in.size();
  if (n == 0) return Z(1);
  std::vector<std::vector<Z>> a(n, std::vector<Z>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = in[i][j];
  Z sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Z(0);
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace glt::linalg
