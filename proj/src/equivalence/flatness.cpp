#include "cartan/equivalence.hpp"
#include "cartan/error.hpp"
#include "support.hpp"

namespace cartan {
namespace {

Expression del(const Expression& e, std::initializer_list<const char*> names) {
  Expression out = e;
  for (const char* n : names) out = partial(out, n);
  return out;
}

FlatnessVerdict verdict(std::vector<std::string> names, std::vector<Expression> residuals) {
  FlatnessVerdict v;
  v.names = std::move(names);
  v.residuals = std::move(residuals);
  v.flat = v.failing() < 0;
  return v;
}

Expression on(const Expression& e, const ChartPtr& chart) {
  return e.chart() ? rebase(e, chart) : Expression(chart, 0);
}

}  // namespace

int FlatnessVerdict::failing() const {
  for (std::size_t k = 0; k < residuals.size(); ++k)
    if (!residuals[k].is_zero()) return static_cast<int>(k);
  return -1;
}

Ode2Flatness check_flat_ode2(const Expression& f_in) {
  ChartPtr c = ode2_chart();
  detail::require_only(f_in, c, {"x", "y", "p"}, {"f"}, "f");
  Expression f = on(f_in, c), p = Expression::variable(c, "p");
  Expression fp = del(f, {"p"});
  Expression r1 = del(f, {"p", "p", "p"});
  Expression r2 = del(f, {"x", "p"}) + del(f, {"p", "p"}) * f - 2 * del(f, {"y"}) - fp * fp / Rational(2) +
                  p * del(f, {"y", "p"});
  Ode2Flatness out;
  static_cast<FlatnessVerdict&>(out) =
      verdict({"f_ppp", "f_xp + f_pp*f - 2*f_y - 1/2*f_p^2 + p*f_yp"}, {r1, r2});
  EquivalenceReport rep = run_equivalence_ode2(f);
  out.invariants_agree = (rep.I1.is_zero() && rep.I2.is_zero()) == out.flat;
  return out;
}

ChartPtr ode_system_chart() {
  static const ChartPtr chart = [] {
    ChartSpec spec;
    spec.coordinates = {"t", "x1", "x2", "dx1", "dx2"};
    spec.functions = {{"F1", spec.coordinates}, {"F2", spec.coordinates}};
    return Chart::make(spec);
  }();
  return chart;
}

Derivation ode_system_total_derivative(const Expression& F1, const Expression& F2) {
  ChartPtr c = ode_system_chart();
  Derivation dt(c);
  dt.set("t", Expression(c, 1));
  dt.set("x1", Expression::variable(c, "dx1"));
  dt.set("x2", Expression::variable(c, "dx2"));
  dt.set("dx1", on(F1, c));
  dt.set("dx2", on(F2, c));
  return dt;
}

FlatnessVerdict check_flat_ode_system(const Expression& F1_in, const Expression& F2_in) {
  ChartPtr c = ode_system_chart();
  std::vector<std::string> vars = c->spec().coordinates;
  detail::require_only(F1_in, c, vars, {"F1", "F2"}, "F1");
  detail::require_only(F2_in, c, vars, {"F1", "F2"}, "F2");
  Expression F1 = on(F1_in, c), F2 = on(F2_in, c);
  Derivation dt = ode_system_total_derivative(F1, F2);
  Expression F1_1 = del(F1, {"dx1"}), F1_2 = del(F1, {"dx2"});
  Expression F2_1 = del(F2, {"dx1"}), F2_2 = del(F2, {"dx2"});
  std::vector<Expression> r = {
      del(F2, {"dx1", "dx1", "dx1"}),
      del(F1, {"dx2", "dx2", "dx2"}),
      del(F2, {"dx2", "dx2", "dx2"}) - 3 * del(F1, {"dx1", "dx2", "dx2"}),
      del(F1, {"dx1", "dx1", "dx1"}) - 3 * del(F2, {"dx1", "dx1", "dx2"}),
      del(F1, {"dx1", "dx1", "dx2"}) - del(F2, {"dx1", "dx2", "dx2"}),
      2 * dt(F1_2) - F1_2 * F1_1 - F2_2 * F1_2 - 4 * del(F1, {"x2"}),
      -(F2_2 * F2_2) - 2 * dt(F1_1) - 4 * del(F2, {"x2"}) + 4 * del(F1, {"x1"}) + 2 * dt(F2_2) + F1_1 * F1_1,
      -2 * dt(F2_1) + F2_2 * F2_1 + 4 * del(F2, {"x1"}) + F1_1 * F2_1,
  };
  return verdict({"F2_dx1dx1dx1", "F1_dx2dx2dx2", "F2_dx2dx2dx2 - 3*F1_dx1dx2dx2",
                  "F1_dx1dx1dx1 - 3*F2_dx1dx1dx2", "F1_dx1dx1dx2 - F2_dx1dx2dx2",
                  "2*Dt(F1_dx2) - F1_dx2*F1_dx1 - F2_dx2*F1_dx2 - 4*F1_x2",
                  "-F2_dx2^2 - 2*Dt(F1_dx1) - 4*F2_x2 + 4*F1_x1 + 2*Dt(F2_dx2) + F1_dx1^2",
                  "-2*Dt(F2_dx1) + F2_dx2*F2_dx1 + 4*F2_x1 + F1_dx1*F2_dx1"},
                 std::move(r));
}

ChartPtr pde_system_chart() {
  static const ChartPtr chart = [] {
    ChartSpec spec;
    spec.coordinates = {"x1", "x2", "u", "u1", "u2"};
    spec.functions = {{"f11", spec.coordinates}, {"f12", spec.coordinates}, {"f22", spec.coordinates}};
    return Chart::make(spec);
  }();
  return chart;
}

FlatnessVerdict check_flat_pde_system(const Expression& f11_in, const Expression& f12_in,
                                      const Expression& f22_in) {
  ChartPtr c = pde_system_chart();
  std::vector<std::string> vars = c->spec().coordinates;
  std::vector<std::string> fns = {"f11", "f12", "f22"};
  detail::require_only(f11_in, c, vars, fns, "f11");
  detail::require_only(f12_in, c, vars, fns, "f12");
  detail::require_only(f22_in, c, vars, fns, "f22");
  Expression f11 = on(f11_in, c), f12 = on(f12_in, c), f22 = on(f22_in, c);
  std::vector<Expression> r = {
      del(f11, {"u2", "u2"}),
      del(f22, {"u1", "u1"}),
      del(f12, {"u2", "u2"}) - del(f11, {"u1", "u2"}),
      del(f22, {"u1", "u2"}),
      del(f11, {"u1", "u1"}) - 4 * del(f12, {"u1", "u2"}) + del(f22, {"u2", "u2"}),
  };
  return verdict({"f11_u2u2", "f22_u1u1", "f12_u2u2 - f11_u1u2", "f22_u1u2",
                  "f11_u1u1 - 4*f12_u1u2 + f22_u2u2"},
                 std::move(r));
}

}  // namespace cartan
