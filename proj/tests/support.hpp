#pragma once

#include <random>
#include <vector>

#include <bit>

#include "cartan/pfaffian.hpp"

namespace testing_support {

using cartan::Expression;
using cartan::Polynomial;
using cartan::Rational;
using cartan::Symbol;

inline Polynomial random_polynomial(std::mt19937_64& rng, const std::vector<Symbol>& vars,
                                    int terms, int max_exp) {
  std::uniform_int_distribution<int> coeff(-9, 9), expo(0, max_exp);
  std::vector<cartan::Term> out;
  for (int k = 0; k < terms; ++k) {
    std::vector<cartan::Power> powers;
    for (Symbol s : vars) {
      int e = expo(rng);
      if (e > 0) powers.push_back({s, static_cast<std::uint32_t>(e)});
    }
    int c = coeff(rng);
    if (c == 0) c = 1;
    out.push_back({cartan::Monomial::from_powers(powers), Rational(c)});
  }
  return Polynomial::from_terms(std::move(out));
}

// Deterministic pseudo-random rational value per symbol.
struct Point {
  explicit Point(std::uint64_t seed) : seed(seed) {}
  Rational operator()(Symbol s) const {
    std::mt19937_64 rng(seed ^ (s.code() * 0x9E3779B97F4A7C15ull));
    std::uniform_int_distribution<int> num(-40, 40), den(1, 13);
    int n = num(rng);
    if (n == 0) n = 17;
    Rational r(n, den(rng));
    r.canonicalize();
    return r;
  }
  std::uint64_t seed;
};

}  // namespace testing_support

namespace testing_support {

// Independent exact rank over the rationals (plain elimination, no pivot
// heuristics), used as an oracle.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Random expression on a chart: a small polynomial, optionally divided by
// another one that has a nonzero constant term.
inline cartan::Expression random_expression(std::mt19937_64& rng, const cartan::ChartPtr& chart,
                                            const std::vector<Symbol>& vars, bool rational) {
  Polynomial num = random_polynomial(rng, vars, 3, 2);
  if (!rational) return cartan::Expression(chart, num, Polynomial(1));
  Polynomial den = random_polynomial(rng, vars, 2, 1) + Polynomial(3);
  if (den.is_zero()) den = Polynomial(1);
  return cartan::Expression(chart, num, den);
}

// Constant tableau and torsion on a one-point chart.
inline cartan::ChartPtr point_chart() {
  cartan::ChartSpec spec;
  spec.coordinates = {"x"};
  return cartan::Chart::make(spec);
}

// Structure equations with constant tableau and torsion.
inline cartan::StructureEquations numeric_structure(std::mt19937_64& rng, std::size_t a, std::size_t n,
                                     std::size_t r, int sparsity) {
  auto c = point_chart();
  std::uniform_int_distribution<int> v(-3, 3);
  cartan::StructureEquations e;
  e.chart = c;
  e.a = a;
  e.n = n;
  e.r = r;
  e.tableau.assign(a, std::vector<std::vector<Expression>>(r, std::vector<Expression>(n, cartan::Expression(c, 0))));
  e.torsion.assign(a, std::vector<std::vector<Expression>>(n, std::vector<Expression>(n, cartan::Expression(c, 0))));
  for (auto& m : e.tableau)
    for (auto& row : m)
      for (auto& x : row)
        if (static_cast<int>(rng() % 10) >= sparsity) x = cartan::Expression(c, v(rng));
  for (auto& m : e.torsion)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        m[j][k] = cartan::Expression(c, v(rng));
        m[k][j] = -m[j][k];
      }
  return e;
}

inline std::vector<std::vector<Rational>> numeric(const cartan::Matrix& m) {
  std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).constant_value();
  return out;
}

// The chart must carry x, y, p and a function f.
inline std::vector<Symbol> symbols_of(const cartan::ChartPtr& c) {
  return {cartan::Chart::variable_symbol(0), cartan::Chart::variable_symbol(1), cartan::Chart::variable_symbol(2),
          *c->lookup("f")};
}

inline cartan::DifferentialForm random_form(std::mt19937_64& rng, const cartan::ChartPtr& c, unsigned degree) {
  cartan::DifferentialForm out(c, degree);
  for (cartan::FormKey key = 0; key < (cartan::FormKey{1} << c->dimension()); ++key)
    if (static_cast<unsigned>(std::popcount(key)) == degree && rng() % 2 == 0)
      out.add(key, random_expression(rng, c, symbols_of(c), rng() % 3 == 0));
  return out;
}

}  // namespace testing_support
