#include "cartan/matrix.hpp"

#include <bit>

#include "cartan/error.hpp"

namespace cartan {

Matrix::Matrix(ChartPtr chart, std::size_t rows, std::size_t cols)
    : chart_(std::move(chart)), rows_(rows), cols_(cols) {
  data_.assign(rows * cols, Expression(chart_, 0));
}

Matrix Matrix::identity(ChartPtr chart, std::size_t n) {
  Matrix m(std::move(chart), n, n);
  for (std::size_t k = 0; k < n; ++k) m.at(k, k) = Expression(m.chart_, 1);
  return m;
}

std::vector<Expression> Matrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not match");
  Matrix out(a.chart_ ? a.chart_ : b.chart_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Expression& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b.at(k, j).is_zero()) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(chart_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

bool Matrix::is_zero() const {
  for (const Expression& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

Echelon row_reduce(const Matrix& a) {
  Matrix m = a;
  Matrix t = Matrix::identity(a.chart(), a.rows());
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  auto swap_rows = [](Matrix& x, std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x.at(r1, c), x.at(r2, c));
  };
  for (std::size_t col = 0; col < m.cols() && next < m.rows(); ++col) {
    std::size_t best = m.rows();
    for (std::size_t r = next; r < m.rows(); ++r) {
      if (m.at(r, col).is_zero()) continue;
      if (best == m.rows() || m.at(r, col).weight() < m.at(best, col).weight()) best = r;
    }
    if (best == m.rows()) continue;
    swap_rows(m, next, best);
    swap_rows(t, next, best);

    Expression inv = m.at(next, col).pow(-1);
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.at(next, c).is_zero()) m.at(next, c) *= inv;
    for (std::size_t c = 0; c < t.cols(); ++c)
      if (!t.at(next, c).is_zero()) t.at(next, c) *= inv;

    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == next || m.at(r, col).is_zero()) continue;
      Expression factor = m.at(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m.at(next, c).is_zero()) m.at(r, c) -= factor * m.at(next, c);
      for (std::size_t c = 0; c < t.cols(); ++c)
        if (!t.at(next, c).is_zero()) t.at(r, c) -= factor * t.at(next, c);
    }
    pivots.push_back(col);
    ++next;
  }
  return {std::move(m), std::move(t), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return row_reduce(a).rank(); }

namespace {

// Rows scaled by the lcm of their denominators; `scale[i]` is that lcm.
struct Cleared {
  std::vector<std::vector<Polynomial>> rows;
  std::vector<Polynomial> scale;
};

Cleared clear_denominators(const Matrix& a) {
  Cleared out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Polynomial l(1);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Polynomial& den = a.at(i, j).denominator();
      if (den.is_one()) continue;
      l = *(l * den).divide_exact(gcd(l, den));
    }
    std::vector<Polynomial> row;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Expression& e = a.at(i, j);
      row.push_back(e.is_zero() ? Polynomial() : e.numerator() * *l.divide_exact(e.denominator()));
    }
    out.rows.push_back(std::move(row));
    out.scale.push_back(std::move(l));
  }
  return out;
}

// Determinants of the square submatrices on `rows` (in order) and every
// column set of the same size, by Laplace expansion along the last row.
std::vector<Polynomial> minors_on(const std::vector<std::vector<Polynomial>>& p,
                                  const std::vector<std::size_t>& rows, std::size_t n) {
  std::vector<Polynomial> level(std::size_t{1} << n);
  level[0] = Polynomial(1);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    std::vector<Polynomial> next(level.size());
    for (std::uint32_t mask = 0; mask < level.size(); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != t + 1) continue;
      Polynomial acc;
      std::size_t pos = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(mask >> c & 1)) continue;
        const Polynomial& entry = p[rows[t]][c];
        const Polynomial& sub = level[mask & ~(std::uint32_t{1} << c)];
        if (!entry.is_zero() && !sub.is_zero()) {
          Polynomial term = entry * sub;
          if ((t + pos) % 2) acc -= term;
          else acc += term;
        }
        ++pos;
      }
      next[mask] = std::move(acc);
    }
    level = std::move(next);
  }
  return level;
}

constexpr std::size_t kCofactorLimit = 12;

}  // namespace

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw SingularCoframe();
  std::size_t n = a.rows();
  if (n > kCofactorLimit) {
    Echelon e = row_reduce(a);
    if (e.rank() != n) throw SingularCoframe();
    return e.transform;
  }
  // a = diag(1/scale) * P, so a^-1 = adj(P) diag(scale) / det P.
  Cleared cl = clear_denominators(a);
  std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  Polynomial det = minors_on(cl.rows, all, n)[full];
  if (det.is_zero()) throw SingularCoframe();
  Matrix out(a.chart(), n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r)
      if (r != j) rows.push_back(r);
    std::vector<Polynomial> m = minors_on(cl.rows, rows, n);
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial cof = m[full & ~(std::uint32_t{1} << i)];
      if (cof.is_zero()) continue;
      if ((i + j) % 2) cof = -cof;
      out.at(i, j) = Expression(a.chart(), cof * cl.scale[j], det);
    }
  }
  return out;
}

Expression determinant(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return Expression(a.chart(), 1);
  if (n <= kCofactorLimit) {
    Cleared cl = clear_denominators(a);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    Polynomial scale(1);
    for (const Polynomial& s : cl.scale) scale *= s;
    return Expression(a.chart(), minors_on(cl.rows, all, n)[(std::uint32_t{1} << n) - 1], scale);
  }
  Matrix m = a;
  Expression det(a.chart(), 1);
  for (std::size_t col = 0; col < m.cols(); ++col) {
    std::size_t best = m.rows();
    for (std::size_t r = col; r < m.rows(); ++r) {
      if (m.at(r, col).is_zero()) continue;
      if (best == m.rows() || m.at(r, col).weight() < m.at(best, col).weight()) best = r;
    }
    if (best == m.rows()) return Expression(a.chart(), 0);
    if (best != col) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(col, c), m.at(best, c));
      det = -det;
    }
    det *= m.at(col, col);
    Expression inv = m.at(col, col).pow(-1);
    for (std::size_t r = col + 1; r < m.rows(); ++r) {
      if (m.at(r, col).is_zero()) continue;
      Expression factor = m.at(r, col) * inv;
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m.at(col, c).is_zero()) m.at(r, c) -= factor * m.at(col, c);
    }
  }
  return det;
}

Matrix left_null_space(const Matrix& a) {
  Echelon e = row_reduce(a);
  std::size_t k = a.rows() - e.rank();
  Matrix basis(a.chart(), k, a.rows());
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < a.rows(); ++c) basis.at(r, c) = e.transform.at(e.rank() + r, c);
  if (k == 0) return basis;
  return row_reduce(basis).reduced;
}

}  // namespace cartan
