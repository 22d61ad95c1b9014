#include "cartan/equivalence.hpp"
#include "cartan/error.hpp"
#include "cartan/render.hpp"
#include "support.hpp"

namespace cartan {

Expression pullback_ode2(const Expression& eta_in, const Expression& C_in, const Expression& fbar_in) {
  ChartPtr c = ode2_chart();
  detail::require_only(eta_in, c, {"x", "y"}, {}, "eta");
  detail::require_only(C_in, c, {}, {}, "C");
  detail::require_only(fbar_in, c, {"x", "y", "p"}, {}, "target");
  auto on = [&](const Expression& e) { return e.chart() ? rebase(e, c) : Expression(c, 0); };
  Expression eta = on(eta_in), C = on(C_in), fbar = on(fbar_in);

  Expression x = Expression::variable(c, "x"), p = Expression::variable(c, "p");
  Expression eta_x = partial(eta, "x"), eta_y = partial(eta, "y");
  if (eta_y.is_zero()) throw VanishingJacobian("eta_y vanishes");
  Expression pbar = eta_x + p * eta_y;
  Expression moved = compose(fbar, c, [&](Symbol s) {
    const std::string& name = c->variable_name(Chart::variable_of(s));
    if (name == "x") return x + C;
    if (name == "y") return eta;
    return pbar;
  });
  Expression second = partial(eta_x, "x") + 2 * p * partial(eta_x, "y") + p * p * partial(eta_y, "y");
  return (moved - second) / eta_y;
}

PainleveAnswer painleve_map(const Expression& f) {
  EquivalenceReport rep = run_equivalence_ode2(f);
  const ChartPtr& c = rep.problem.chart;
  PainleveAnswer out;
  if (!rep.I2.is_zero() || !rep.I3.is_zero()) {
    out.failing = rep.I2.is_zero() ? "I3" : "I2";
    out.residual = rep.I2.is_zero() ? rep.I3 : rep.I2;
    return out;
  }
  out.in_class = true;
  const std::vector<Derivation>& X = rep.X;
  Expression x3i1 = X[2](rep.I1);
  out.eta = -rep.I1 / Rational(12);
  out.C = -(rep.I1 * rep.I1) / Rational(24) - X[2](x3i1) / Rational(12) - Expression::variable(c, "x");

  for (const char* v : {"p", "a3"}) {
    Expression e = partial(out.eta, v);
    if (!e.is_zero()) {
      out.failing = std::string("d(eta)/d") + v;
      out.residual = e;
      return out;
    }
  }
  for (std::size_t i = 0; i < 4; ++i) {
    Expression xc = X[i](out.C);
    if (xc.is_zero()) continue;
    if (i == 2) {
      // X3(C) = 0 is -1/12 (I1 X3(I1) + X3^3(I1) + 12) = 0.
      out.failing = "I1*X3(I1) + X3(X3(X3(I1))) + 12";
      out.residual = -12 * xc;
    } else {
      out.failing = "X" + std::to_string(i + 1) + "(C)";
      out.residual = xc;
    }
    return out;
  }
  out.equivalent = true;
  return out;
}

ChartPtr ode3_chart() {
  static const ChartPtr chart = [] {
    ChartSpec spec;
    spec.coordinates = {"x", "y", "p", "q"};
    spec.functions = {{"f", {"x", "y", "p", "q"}}, {"xi", {"x", "y", "p"}}, {"eta", {"x", "y", "p"}}};
    return Chart::make(spec);
  }();
  return chart;
}

SwellReport contact_prolongation_ode3(const Expression& xi_in, const Expression& eta_in) {
  ChartPtr c = ode3_chart();
  detail::require_only(xi_in, c, {"x", "y", "p"}, {"xi", "eta"}, "xi");
  detail::require_only(eta_in, c, {"x", "y", "p"}, {"xi", "eta"}, "eta");
  auto on = [&](const Expression& e) { return e.chart() ? rebase(e, c) : Expression(c, 0); };
  Expression xi = on(xi_in), eta = on(eta_in);

  Derivation dx(c);
  dx.set("x", Expression(c, 1));
  dx.set("y", Expression::variable(c, "p"));
  dx.set("p", Expression::variable(c, "q"));
  dx.set("q", Expression::named(c, "f"));
  Expression dxi = dx(xi);
  if (dxi.is_zero()) throw VanishingJacobian("D_x xi vanishes");

  SwellReport out;
  out.pbar = dx(eta) / dxi;
  out.qbar = dx(out.pbar) / dxi;
  out.rbar = dx(out.qbar) / dxi;
  out.monomials[0] = monomial_count(out.pbar);
  out.monomials[1] = monomial_count(out.qbar);
  out.monomials[2] = monomial_count(out.rbar);
  return out;
}

}  // namespace cartan
