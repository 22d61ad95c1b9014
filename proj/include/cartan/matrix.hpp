#pragma once

#include <vector>

#include "cartan/expression.hpp"

namespace cartan {

/// Dense matrix over the rational-function field of a chart.
class Matrix {
 public:
  Matrix() = default;
  Matrix(ChartPtr chart, std::size_t rows, std::size_t cols);
  static Matrix identity(ChartPtr chart, std::size_t n);

  const ChartPtr& chart() const { return chart_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Expression& at(std::size_t r, std::size_t c) { return data_.at(r * cols_ + c); }
  const Expression& at(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }
  std::vector<Expression> row(std::size_t r) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix transpose() const;
  bool is_zero() const;
  bool operator==(const Matrix& other) const;

 private:
  ChartPtr chart_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Expression> data_;
};

/// Reduced row echelon form R = E * A.
struct Echelon {
  Matrix reduced;
  /// Row operations applied, so that transform * A = reduced.
  Matrix transform;
  /// Pivot column of each of the first rank() rows of `reduced`.
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination in column order. Within a column the pivot is
/// the candidate row of smallest expression weight, which keeps
/// intermediate rational functions small.
Echelon row_reduce(const Matrix& a);

std::size_t rank(const Matrix& a);
/// Throws SingularCoframe when `a` is not invertible.
Matrix inverse(const Matrix& a);
Expression determinant(const Matrix& a);
/// Rows spanning { y : y * a = 0 }, in reduced row echelon form.
Matrix left_null_space(const Matrix& a);

}  // namespace cartan
