#pragma once

// Dense matrices over K and exact row reduction.

#include <string>
#include <vector>

#include "subideal/error.hpp"
#include "subideal/scalar.hpp"

namespace subideal {

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<K>::zero()) {}
  explicit Matrix(const std::vector<std::vector<K>>& rows) : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ValidationError("ragged matrix rows");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<K> row(std::size_t i) const {
    return std::vector<K>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<std::vector<K>> to_rows() const {
    std::vector<std::vector<K>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  /// Columns of `a` followed by columns of `b`.
  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ && a.cols_ && b.cols_) throw ValidationError("hstack row mismatch");
    std::size_t r = a.cols_ ? a.rows_ : b.rows_;
    Matrix m(r, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
  }

  /// Matrix whose j-th column is cols[j].
  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<K>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw ValidationError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> data_;
};

struct EchelonForm {
  Matrix<Rational> matrix;          // nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column of each row, increasing
};

/// Reduced row echelon form over Q; pivots are 1, zero rows dropped.
inline EchelonForm rref(Matrix<Rational> A) {
  const std::size_t R = A.rows(), C = A.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && A(p, c) == 0) ++p;
    if (p == R) continue;
    if (p != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(A(p, j), A(r, j));
    Rational inv = 1 / A(r, c);
    for (std::size_t j = c; j < C; ++j) A(r, j) *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || A(i, c) == 0) continue;
      Rational f = A(i, c);
      for (std::size_t j = c; j < C; ++j) A(i, j) -= f * A(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<Rational> out(r, C);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < C; ++j) out(i, j) = A(i, j);
  return {std::move(out), std::move(pivots)};
}

inline std::size_t rank(const Matrix<Rational>& A) { return rref(A).pivots.size(); }

/// Rows form a basis of {v : A v = 0}, one per free column, in reduced form.
inline Matrix<Rational> kernel_basis(const Matrix<Rational>& A) {
  const std::size_t C = A.cols();
  EchelonForm e = rref(A);
  std::vector<bool> is_pivot(C, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(C, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.matrix(i, f);
    rows.push_back(std::move(v));
  }
  if (rows.empty()) return Matrix<Rational>(0, C);
  return rref(Matrix<Rational>(rows)).matrix;
}

}  // namespace subideal
