#include "doctest.h"

#include "cartan/error.hpp"
#include "cartan/matrix.hpp"
#include "support.hpp"

using namespace cartan;

namespace {

ChartPtr chart() {
  ChartSpec spec;
  spec.coordinates = {"x", "y", "z"};
  spec.functions = {{"f", {"x", "y"}}};
  return Chart::make(spec);
}

// Leibniz expansion as an independent determinant oracle.
Expression leibniz(const Matrix& m) {
  std::vector<std::size_t> perm(m.rows());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  Expression total(m.chart(), 0);
  do {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Expression term(m.chart(), sign);
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m.at(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Matrix random_matrix(std::mt19937_64& rng, const ChartPtr& c, std::size_t rows, std::size_t cols) {
  std::vector<Symbol> vars{Chart::variable_symbol(0), Chart::variable_symbol(1), *c->lookup("f")};
  Matrix m(c, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = testing_support::random_expression(rng, c, vars, (i + j) % 3 == 0);
  return m;
}

}  // namespace

TEST_CASE("inverse and determinant agree with independent oracles") {
  auto c = chart();
  std::mt19937_64 rng(21);
  for (int round = 0; round < 6; ++round) {
    Matrix m = random_matrix(rng, c, 3, 3);
    Expression det = determinant(m);
    CHECK(det == leibniz(m));
    if (det.is_zero()) continue;
    CHECK(m * inverse(m) == Matrix::identity(c, 3));
  }
}

TEST_CASE("rank and left null space") {
  auto c = chart();
  auto x = Expression::variable(c, "x"), y = Expression::variable(c, "y");
  Matrix m(c, 3, 2);
  m.at(0, 0) = x;
  m.at(0, 1) = y;
  m.at(1, 0) = x * y;
  m.at(1, 1) = y * y;
  m.at(2, 0) = Expression(c, 1);
  CHECK(rank(m) == 2);
  Matrix y_left = left_null_space(m);
  REQUIRE(y_left.rows() == 1);
  CHECK((y_left * m).is_zero());
  CHECK_THROWS_AS(inverse(m), SingularCoframe);
}
