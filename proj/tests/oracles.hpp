#pragma once

// Independent constructions used to check the equivalence layer: they
// build test inputs from explicit point transformations instead of going
// through the library's own pullback or invariants.

#include <random>
#include <utility>

#include "cartan/equivalence.hpp"
#include "support.hpp"

namespace oracles {

using namespace cartan;

inline Expression var(const ChartPtr& c, const char* name) { return Expression::named(c, name); }

// Polynomial eta(x, y) of total degree <= 3 whose y-derivative is nonzero.
inline Expression random_eta(std::mt19937_64& rng, const ChartPtr& c) {
  std::uniform_int_distribution<int> coeff(-3, 3), pick(0, 9);
  static const std::pair<int, int> monomials[] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1},
                                                  {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};
  Expression x = var(c, "x"), y = var(c, "y");
  Expression eta = Expression(c, coeff(rng) == 0 ? 1 : 2) * y;
  for (int k = 0; k < 3; ++k) {
    auto [i, j] = monomials[pick(rng)];
    eta += Expression(c, Rational(coeff(rng), 1 + pick(rng) % 3)) * x.pow(i) * y.pow(j);
  }
  if (partial(eta, "y").is_zero()) eta += y;
  return eta;
}

// True when every solution of y'' = f is mapped by (x + C, eta) onto a
// solution of y'' = fbar, checked at `points` random rational points:
// with D = d/dx + p d/dy + f d/dp, D(D(eta)) must equal fbar at the image.
inline bool maps_solutions(const Expression& f, const Expression& eta, const Rational& C,
                           const Expression& fbar, int points, std::uint64_t seed) {
  const ChartPtr& c = f.chart() ? f.chart() : eta.chart();
  Derivation D(c);
  D.set("x", Expression(c, 1));
  D.set("y", var(c, "p"));
  D.set("p", f.chart() ? f : Expression(c, 0));
  Expression pbar = D(eta), qbar = D(pbar);
  for (int k = 0; k < points; ++k) {
    testing_support::Point pt(seed + static_cast<std::uint64_t>(k));
    Rational x = pt(Chart::variable_symbol(0));
    Rational ybar = eta.evaluate(pt), pb = pbar.evaluate(pt);
    Rational target = fbar.chart() ? fbar.evaluate([&](Symbol s) -> Rational {
      const std::string& n = c->variable_name(Chart::variable_of(s));
      if (n == "x") return x + C;
      if (n == "y") return ybar;
      return pb;
    })
                                   : Rational(0);
    if (qbar.evaluate(pt) != target) return false;
  }
  return true;
}

// x'' = F obtained from the flat system x-bar'' = 0 by the point
// transformation t-bar = tau, x-bar^a = phi^a (all functions of t, x1, x2).
// Writing D0 = d/dt + dx1 d/dx1 + dx2 d/dx2, the condition
// D^2 phi D tau - D phi D^2 tau = 0 is linear in x'' and solved by Cramer.
inline std::pair<Expression, Expression> flat_system_image(const Expression& tau, const Expression& phi1,
                                                           const Expression& phi2) {
  ChartPtr c = ode_system_chart();
  Derivation D0(c);
  D0.set("t", Expression(c, 1));
  D0.set("x1", var(c, "dx1"));
  D0.set("x2", var(c, "dx2"));
  Expression dtau = D0(tau), d2tau = D0(dtau);
  const Expression* phis[] = {&phi1, &phi2};
  Expression m[2][2], b[2];
  for (int a = 0; a < 2; ++a) {
    Expression dphi = D0(*phis[a]);
    for (int i = 0; i < 2; ++i) {
      const char* xi = i == 0 ? "x1" : "x2";
      m[a][i] = partial(*phis[a], xi) * dtau - dphi * partial(tau, xi);
    }
    b[a] = -(D0(dphi) * dtau - dphi * d2tau);
  }
  Expression det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return {(b[0] * m[1][1] - m[0][1] * b[1]) / det, (m[0][0] * b[1] - b[0] * m[1][0]) / det};
}

}  // namespace oracles
