#include <algorithm>
#include <numeric>
#include <random>

#include "cartan/error.hpp"
#include "cartan/pfaffian.hpp"

namespace cartan {

Matrix absorption_matrix(const StructureEquations& e) {
  std::size_t pairs = e.n == 0 ? 0 : e.n * (e.n - 1) / 2;
  Matrix l(e.chart, e.a * pairs, e.r * e.n);
  std::size_t row = 0;
  for (std::size_t alpha = 0; alpha < e.a; ++alpha)
    for (std::size_t j = 0; j < e.n; ++j)
      for (std::size_t k = j + 1; k < e.n; ++k, ++row)
        for (std::size_t rho = 0; rho < e.r; ++rho) {
          l.at(row, rho * e.n + k) += e.A(alpha, rho, j);
          l.at(row, rho * e.n + j) -= e.A(alpha, rho, k);
        }
  return l;
}

std::vector<Expression> torsion_vector(const StructureEquations& e) {
  std::vector<Expression> t;
  for (std::size_t alpha = 0; alpha < e.a; ++alpha)
    for (std::size_t j = 0; j < e.n; ++j)
      for (std::size_t k = j + 1; k < e.n; ++k) t.push_back(e.T(alpha, j, k));
  return t;
}

AbsorptionSolution absorb_torsion(const StructureEquations& e,
                                  const std::vector<std::size_t>& unknown_order) {
  std::size_t unknowns = e.r * e.n;
  std::vector<std::size_t> order = unknown_order;
  if (order.empty()) {
    order.resize(unknowns);
    std::iota(order.begin(), order.end(), 0);
  }
  if (order.size() != unknowns) throw std::invalid_argument("unknown order has the wrong size");

  Matrix full = absorption_matrix(e);
  Matrix l(e.chart, full.rows(), unknowns);
  for (std::size_t r = 0; r < full.rows(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) l.at(r, c) = full.at(r, order[c]);
  std::vector<Expression> t = torsion_vector(e);

  AbsorptionSolution sol;
  sol.n = e.n;
  sol.r = e.r;
  sol.lambda.assign(unknowns, Expression(e.chart, 0));
  Echelon ech = row_reduce(l);

  // Particular solution: pivot unknowns from E * T, free unknowns zero.
  for (std::size_t p = 0; p < ech.rank(); ++p) {
    Expression value(e.chart, 0);
    for (std::size_t c = 0; c < t.size(); ++c)
      if (!ech.transform.at(p, c).is_zero() && !t[c].is_zero()) value += ech.transform.at(p, c) * t[c];
    sol.lambda[order[ech.pivots[p]]] = value;
  }
  std::vector<bool> is_pivot(unknowns, false);
  for (std::size_t c : ech.pivots) is_pivot[c] = true;
  std::vector<std::pair<std::size_t, std::vector<Expression>>> directions;
  for (std::size_t f = 0; f < unknowns; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Expression> h(unknowns, Expression(e.chart, 0));
    h[order[f]] = Expression(e.chart, 1);
    for (std::size_t p = 0; p < ech.rank(); ++p) h[order[ech.pivots[p]]] = -ech.reduced.at(p, f);
    directions.emplace_back(order[f], std::move(h));
  }
  std::sort(directions.begin(), directions.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [index, h] : directions) {
    sol.free.push_back(index);
    sol.homogeneous.push_back(std::move(h));
  }

  sol.obstruction = left_null_space(l);
  for (std::size_t r = 0; r < sol.obstruction.rows(); ++r) {
    Expression v(e.chart, 0);
    for (std::size_t c = 0; c < t.size(); ++c)
      if (!sol.obstruction.at(r, c).is_zero() && !t[c].is_zero()) v += sol.obstruction.at(r, c) * t[c];
    if (!v.is_zero()) sol.essential.push_back(v);
  }
  return sol;
}

std::size_t flag_rank(const StructureEquations& e, const std::vector<std::vector<Rational>>& flag,
                      std::size_t k) {
  // Rows (alpha, l) for l < k: the forms A^alpha_{rho i} flag[l][i] pi^rho.
  Matrix m(e.chart, e.a * k, e.r);
  for (std::size_t alpha = 0; alpha < e.a; ++alpha)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t rho = 0; rho < e.r; ++rho) {
        Expression v(e.chart, 0);
        for (std::size_t i = 0; i < e.n; ++i)
          if (flag[l][i] != 0) v += e.A(alpha, rho, i) * flag[l][i];
        m.at(alpha * k + l, rho) = v;
      }
  return rank(m);
}

InvolutionReport cartan_characters(const StructureEquations& e, std::uint64_t seed) {
  InvolutionReport report;
  report.characters.assign(e.n, 0);
  if (e.n == 0) {
    report.involutive = true;
    return report;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-29, 29);
  std::vector<std::size_t> best(e.n + 1, 0);
  // Generic ranks: the maximum over a few random rational flags.
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<std::vector<Rational>> flag(e.n, std::vector<Rational>(e.n));
    for (auto& row : flag)
      for (auto& v : row) v = pick(rng);
    for (std::size_t k = 1; k <= e.n; ++k) best[k] = std::max(best[k], flag_rank(e, flag, k));
  }
  for (std::size_t k = 1; k <= e.n; ++k) best[k] = std::max(best[k], best[k - 1]);
  for (std::size_t k = 1; k <= e.n; ++k) {
    report.characters[k - 1] = best[k] - best[k - 1];
    report.cartan_bound += k * report.characters[k - 1];
  }
  // Directions of pi that the tableau never sees carry n free lambdas each
  // and no constraints; they are not part of the effective tableau.
  std::size_t unused = e.r - best[e.n];
  std::size_t kernel = e.r * e.n - rank(absorption_matrix(e));
  report.prolonged_dimension = kernel - unused * e.n;
  report.involutive = report.prolonged_dimension == report.cartan_bound;
  return report;
}

}  // namespace cartan
