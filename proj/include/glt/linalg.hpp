#pragma once

#include "glt/core.hpp"

namespace glt::linalg {

using Vec = std::vector<Q>;
using Matrix = std::vector<Vec>;  // row-major

Matrix zeros(size_t rows, size_t cols);

struct Echelon {
  Matrix rows;                // reduced row echelon form, nonzero rows only
  std::vector<size_t> pivots; // pivot column of each row
};

Echelon rref(Matrix m);
size_t rank(const Matrix& m);
// Basis of {v : m v = 0}; `cols` needed when m has no rows.
Matrix kernel(const Matrix& m, size_t cols);
Matrix transpose(const Matrix& m, size_t cols_if_empty = 0);
Matrix multiply(const Matrix& a, const Matrix& b, size_t b_cols);

// Incrementally maintained row span in reduced form.
class RowSpan {
 public:
  explicit RowSpan(size_t dim) : dim_(dim) {}
  // Adds v if independent; returns whether the span grew.
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  size_t rank() const { return rows_.size(); }
  size_t dim() const { return dim_; }
  const std::vector<size_t>& pivots() const { return pivots_; }
  Vec reduce(Vec v) const;

 private:
  size_t dim_;
  Matrix rows_;
  std::vector<size_t> pivots_;
};

// Exact determinant of an integer matrix (fraction-free elimination).
Z det(const std::vector<std::vector<i64>>& m);

}  // namespace glt::linalg
