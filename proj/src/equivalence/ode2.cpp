#include <stdexcept>

#include "cartan/equivalence.hpp"
#include "cartan/error.hpp"
#include "support.hpp"

namespace cartan {
namespace {

DifferentialForm dv(const ChartPtr& c, const char* name) { return DifferentialForm::differential(c, name); }

// Structure coefficients are constants or constant multiples of one
// invariant; anything else means the coframe is not the expected one.
Expression abstract_coefficient(const Expression& c, const EquivalenceReport& r, const ChartPtr& a) {
  if (c.is_constant()) return Expression(a, c.constant_value());
  const Expression* inv[] = {&r.I1, &r.I2, &r.I3};
  for (std::size_t m = 0; m < 3; ++m) {
    if (inv[m]->is_zero()) continue;
    Expression ratio = c / *inv[m];
    if (ratio.is_constant()) return ratio.constant_value() * Expression::symbol(a, Chart::function_symbol(m));
  }
  throw std::logic_error("structure coefficient is not a multiple of an invariant");
}

DifferentialForm basis_form(const ChartPtr& a, const std::vector<std::size_t>& idx, std::size_t from,
                            std::size_t to) {
  DifferentialForm out = DifferentialForm::scalar(Expression(a, 1));
  for (std::size_t k = from; k < to; ++k) out = wedge(out, DifferentialForm::differential(a, idx[k]));
  return out;
}

// d on forms over the abstract coframe: dc = sum_l Xl(c) theta^l, and
// d theta^i given by the structure equations.
DifferentialForm structural_d(const DifferentialForm& w, const std::vector<DifferentialForm>& s) {
  const ChartPtr& a = w.chart();
  DifferentialForm out(a, w.degree() + 1);
  for (const auto& [key, c] : w.terms()) {
    std::vector<std::size_t> idx = indices_of(key);
    DifferentialForm basis = basis_form(a, idx, 0, idx.size());
    for (std::size_t l = 0; l < a->dimension(); ++l) {
      Expression dc = partial(c, l);
      if (!dc.is_zero()) out += dc * wedge(DifferentialForm::differential(a, l), basis);
    }
    for (std::size_t m = 0; m < idx.size(); ++m) {
      DifferentialForm piece = wedge(wedge(basis_form(a, idx, 0, m), s[idx[m]]),
                                     basis_form(a, idx, m + 1, idx.size()));
      out += (m % 2 ? -c : c) * piece;
    }
  }
  return out;
}

}  // namespace

ChartPtr ode2_chart() {
  static const ChartPtr chart = [] {
    ChartSpec spec;
    spec.coordinates = {"x", "y", "p"};
    spec.parameters = {"a3"};
    spec.functions = {{"f", {"x", "y", "p"}}};
    return Chart::make(spec);
  }();
  return chart;
}

ChartPtr syzygy_chart() {
  static const ChartPtr chart = [] {
    ChartSpec spec;
    spec.coordinates = {"X1", "X2", "X3", "X4"};
    for (const char* name : {"I1", "I2", "I3"}) spec.functions.push_back({name, spec.coordinates});
    spec.notation = DerivativeNotation::Operator;
    return Chart::make(spec);
  }();
  return chart;
}

Ode2Problem make_ode2_problem(const Expression& f_in) {
  Ode2Problem pb;
  pb.chart = ode2_chart();
  const ChartPtr& c = pb.chart;
  detail::require_only(f_in, c, {"x", "y", "p"}, {"f"}, "f");
  pb.f = f_in.chart() ? rebase(f_in, c) : Expression(c, 0);

  Expression p = Expression::variable(c, "p"), a3 = Expression::variable(c, "a3");
  Expression a1 = a3, a2 = -partial(pb.f, "p") * a3 / Rational(2);
  pb.reduction = {{"a1", a1}, {"a2", a2}};
  DifferentialForm w1 = dv(c, "y") - p * dv(c, "x");
  DifferentialForm w2 = dv(c, "p") - pb.f * dv(c, "x");
  pb.lifted = {a1 * w2 + a2 * w1, a3 * w1, dv(c, "x")};
  pb.pi = a3.pow(-1) * dv(c, "a3");
  return pb;
}

EquivalenceReport run_equivalence_ode2(const Expression& f) {
  EquivalenceReport rep;
  rep.problem = make_ode2_problem(f);
  const Ode2Problem& pb = rep.problem;

  rep.lifted_structure = coframe_structure_equations(pb.lifted, {pb.pi});
  rep.absorption = absorb_torsion(rep.lifted_structure);
  rep.lifted_involution = cartan_characters(rep.lifted_structure);
  if (!rep.absorption.free.empty()) throw std::logic_error("group form is not determined by absorption");

  DifferentialForm theta4 = pb.pi;
  for (std::size_t i = 0; i < pb.lifted.size(); ++i)
    if (!rep.absorption.lambda[i].is_zero()) theta4 = theta4 - rep.absorption.lambda[i] * pb.lifted[i];
  rep.coframe = pb.lifted;
  rep.coframe.push_back(theta4);

  Coframe frame(rep.coframe);
  for (const DifferentialForm& t : rep.coframe) rep.structure.push_back(express_in_coframe(d(t), frame));

  // The coframe is an e-structure: no group forms left, so the tableau is
  // empty and only torsion remains.
  StructureEquations e;
  e.chart = pb.chart;
  e.a = e.n = rep.coframe.size();
  e.tableau.assign(e.a, {});
  e.torsion.assign(e.a, std::vector<std::vector<Expression>>(e.n, std::vector<Expression>(e.n, Expression(pb.chart, 0))));
  for (std::size_t i = 0; i < e.a; ++i)
    for (const auto& [key, c] : rep.structure[i].terms()) {
      std::vector<std::size_t> jk = indices_of(key);
      e.torsion[i][jk[0]][jk[1]] = c;
      e.torsion[i][jk[1]][jk[0]] = -c;
    }
  rep.involution = cartan_characters(e);

  rep.I1 = rep.structure[0].coefficient(key_of({1, 2}));
  rep.I2 = rep.structure[3].coefficient(key_of({0, 1}));
  rep.I3 = rep.structure[3].coefficient(key_of({1, 2}));
  rep.X = dual_frame(frame);
  rep.syzygies = syzygies_ode2(rep);
  return rep;
}

std::vector<Expression> syzygies_ode2(const EquivalenceReport& report) {
  ChartPtr a = syzygy_chart();
  std::vector<DifferentialForm> s;
  for (const DifferentialForm& w : report.structure) {
    DifferentialForm abstract(a, 2);
    for (const auto& [key, c] : w.terms()) abstract.add(key, abstract_coefficient(c, report, a));
    s.push_back(std::move(abstract));
  }
  std::vector<Expression> out;
  for (const DifferentialForm& w : s) {
    DifferentialForm dd = structural_d(w, s);
    for (const auto& [key, c] : dd.terms()) {
      Expression rel = c / c.numerator().leading_term().coefficient;
      bool seen = false;
      for (const Expression& r : out)
        if ((rel / r).is_constant()) seen = true;
      if (!seen) out.push_back(rel);
    }
  }
  return out;
}

Expression syzygy_in_coordinates(const EquivalenceReport& report, const Expression& relation) {
  const ChartPtr& c = report.problem.chart;
  const Expression* inv[] = {&report.I1, &report.I2, &report.I3};
  return compose(relation, c, [&](Symbol s) {
    if (s.is_variable() || s.index() > 2) throw DomainError("relation mentions a frame coordinate");
    Expression e = *inv[s.index()];
    for (std::size_t l = 0; l < 4; ++l)
      for (unsigned k = 0; k < s.order(l); ++k) e = report.X[l](e);
    return e;
  });
}

}  // namespace cartan
