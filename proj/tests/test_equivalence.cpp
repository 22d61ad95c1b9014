#include "doctest.h"

#include "cartan/equivalence.hpp"
#include "cartan/error.hpp"
#include "cartan/render.hpp"
#include "oracles.hpp"

using namespace cartan;
using oracles::var;

namespace {

DifferentialForm dv(const ChartPtr& c, const char* name) { return DifferentialForm::differential(c, name); }

Derivation total_x(const ChartPtr& c, const Expression& f) {
  Derivation D(c);
  D.set("x", Expression(c, 1));
  D.set("y", var(c, "p"));
  D.set("p", f);
  return D;
}

bool proportional(const Expression& a, const Expression& b) {
  return !a.is_zero() && !b.is_zero() && (a / b).is_constant();
}

}  // namespace

TEST_CASE("second-order ODE: coframe, structure equations and invariants") {
  auto c = ode2_chart();
  Expression f = var(c, "f"), p = var(c, "p"), a3 = var(c, "a3");
  Expression fp = var(c, "f_p"), fpp = var(c, "f_pp");
  Expression half(c, Rational(1, 2));
  EquivalenceReport rep = run_equivalence_ode2(f);

  std::vector<DifferentialForm> expected = {
      a3 * ((half * fp * p - f) * dv(c, "x") - half * fp * dv(c, "y") + dv(c, "p")),
      a3 * (dv(c, "y") - p * dv(c, "x")),
      dv(c, "x"),
      (half * fp - half * fpp * p) * dv(c, "x") + half * fpp * dv(c, "y") + a3.pow(-1) * dv(c, "a3"),
  };
  REQUIRE(rep.coframe.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(rep.coframe[i] == expected[i]);

  Derivation D = total_x(c, f);
  Expression I1 = -fp * fp / Rational(4) - var(c, "f_y") + half * D(fp);
  Expression I2 = var(c, "f_ppp") / (2 * a3 * a3);
  Expression I3 = (var(c, "f_yp") - D(fpp)) / (2 * a3);
  CHECK(rep.I1 == I1);
  CHECK(rep.I2 == I2);
  CHECK(rep.I3 == I3);

  // d theta written on theta1..theta4; basis index k is theta^{k+1}.
  auto form = [&](std::vector<std::pair<std::vector<std::size_t>, Expression>> terms) {
    DifferentialForm out(c, 2);
    for (auto& [idx, v] : terms) out.add(key_of(idx), v);
    return out;
  };
  Expression one(c, 1);
  CHECK(rep.structure[0] == form({{{0, 3}, -one}, {{1, 2}, I1}}));
  CHECK(rep.structure[1] == form({{{0, 2}, -one}, {{1, 3}, -one}}));
  CHECK(rep.structure[2].is_zero());
  CHECK(rep.structure[3] == form({{{0, 1}, I2}, {{1, 2}, I3}}));

  // The derivations, as components along (x, y, p, a3).
  std::vector<std::vector<Expression>> X = {
      {Expression(c, 0), Expression(c, 0), a3.pow(-1), Expression(c, 0)},
      {Expression(c, 0), a3.pow(-1), half * fp / a3, -half * fpp},
      {one, p, f, -half * fp * a3},
      {Expression(c, 0), Expression(c, 0), Expression(c, 0), a3},
  };
  for (int i = 0; i < 4; ++i) CHECK(rep.X[i].components() == X[i]);

  CHECK(rep.absorption.free.empty());
  CHECK(rep.involution.involutive);
}

TEST_CASE("dH expands along the invariant coframe") {
  auto c = ode2_chart();
  EquivalenceReport rep = run_equivalence_ode2(var(c, "f"));
  Expression h = var(c, "f_y") * var(c, "a3") + var(c, "p") * var(c, "x");
  DifferentialForm dh(c, 1);
  for (int i = 0; i < 4; ++i) dh += rep.X[i](h) * rep.coframe[i];
  CHECK(dh == d(DifferentialForm::scalar(h)));
}

TEST_CASE("flatness residuals against the invariants") {
  auto c = ode2_chart();
  Expression f = var(c, "f");
  EquivalenceReport rep = run_equivalence_ode2(f);
  Ode2Flatness v = check_flat_ode2(f);
  CHECK(2 * rep.I1 == v.residuals[1]);
  CHECK(2 * var(c, "a3").pow(2) * rep.I2 == v.residuals[0]);
  CHECK_FALSE(v.flat);
}

TEST_CASE("invariants of concrete equations") {
  auto c = ode2_chart();
  Expression x = var(c, "x"), y = var(c, "y");
  EquivalenceReport zero = run_equivalence_ode2(Expression(c, 0));
  CHECK(zero.I1.is_zero());
  CHECK(zero.I2.is_zero());
  CHECK(zero.I3.is_zero());
  for (const Expression& s : zero.syzygies) CHECK(syzygy_in_coordinates(zero, s).is_zero());

  EquivalenceReport p1 = run_equivalence_ode2(6 * y * y + x);
  CHECK(p1.I1 == -12 * y);
  CHECK(p1.I2.is_zero());
  CHECK(p1.I3.is_zero());

  CHECK_THROWS_AS(run_equivalence_ode2(var(c, "a3") * x), DomainError);
}

TEST_CASE("syzygies contain the five frame relations and vanish in coordinates") {
  auto c = ode2_chart();
  EquivalenceReport rep = run_equivalence_ode2(var(c, "f"));
  auto a = syzygy_chart();
  auto S = [&](const char* name) { return Expression::named(a, name); };
  std::vector<Expression> printed = {
      S("I1_X1") + S("I3"), S("I1_X4"), S("I2_X4") + 2 * S("I2"), S("I3_X1") + S("I2_X3"),
      S("I3_X4") + S("I3"),
  };
  for (const Expression& r : printed) {
    bool found = false;
    for (const Expression& s : rep.syzygies) found = found || proportional(s, r);
    CHECK_MESSAGE(found, to_text(r));
  }
  for (const Expression& s : rep.syzygies) CHECK(syzygy_in_coordinates(rep, s).is_zero());
  CHECK(to_text(S("I1_X3")) == "X3(I1)");
}

TEST_CASE("check_flat_ode2 examples") {
  auto c = ode2_chart();
  Expression x = var(c, "x"), y = var(c, "y"), p = var(c, "p");
  CHECK(check_flat_ode2(Expression(c, 0)).flat);
  Ode2Flatness a = check_flat_ode2(-p * p / y);
  CHECK(a.flat);
  CHECK(a.invariants_agree);
  Ode2Flatness b = check_flat_ode2(6 * y * y + x);
  CHECK_FALSE(b.flat);
  CHECK(b.failing() == 1);
  CHECK(b.residuals[1] == -24 * y);
  Ode2Flatness d3 = check_flat_ode2(p.pow(3));
  CHECK(d3.failing() == 0);
  CHECK(d3.residuals[0] == Expression(c, 6));
}

TEST_CASE("pullback agrees with the solution-mapping oracle") {
  auto c = ode2_chart();
  Expression x = var(c, "x"), y = var(c, "y"), p = var(c, "p");
  CHECK(pullback_ode2(y, Expression(c, 0), Expression(c, 0)).is_zero());
  CHECK(pullback_ode2(y * y, Expression(c, 0), Expression(c, 0)) == -p * p / y);
  CHECK(pullback_ode2(y, Expression(c, 5), 6 * y * y + x) == 6 * y * y + x + 5);

  std::mt19937_64 rng(2024);
  for (int k = 0; k < 10; ++k) {
    Expression eta = oracles::random_eta(rng, c);
    Rational C(static_cast<long>(rng() % 7) - 3);
    Expression fbar = 6 * y * y + x + (k % 2 ? p * p * y : Expression(c, 0));
    Expression f = pullback_ode2(eta, Expression(c, C), fbar);
    CHECK(oracles::maps_solutions(f, eta, C, fbar, 3, 50 + k));
  }

  CHECK_THROWS_AS(pullback_ode2(x, Expression(c, 0), Expression(c, 0)), VanishingJacobian);
  CHECK_THROWS_AS(pullback_ode2(y + p, Expression(c, 0), Expression(c, 0)), DomainError);
  CHECK_THROWS_AS(pullback_ode2(y, x, Expression(c, 0)), DomainError);
}

TEST_CASE("pullbacks of the flat equation are flat, perturbations are not") {
  auto c = ode2_chart();
  Expression y = var(c, "y"), p = var(c, "p");
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    Expression eta = oracles::random_eta(rng, c);
    Expression f = pullback_ode2(eta, Expression(c, k % 3), Expression(c, 0));
    REQUIRE(oracles::maps_solutions(f, eta, Rational(k % 3), Expression(c, 0), 2, 100 + k));
    Ode2Flatness v = check_flat_ode2(f);
    CHECK(v.flat);
    CHECK(v.invariants_agree);
    Ode2Flatness w = check_flat_ode2(f + (k % 2 ? p.pow(3) : y * p.pow(3)));
    CHECK_FALSE(w.flat);
    CHECK(w.failing() >= 0);
  }
}

TEST_CASE("Painleve I: examples and randomized round trip") {
  auto c = ode2_chart();
  Expression x = var(c, "x"), y = var(c, "y");
  Expression target = 6 * y * y + x;

  PainleveAnswer id = painleve_map(target);
  CHECK(id.equivalent);
  CHECK(id.eta == y);
  CHECK(id.C.is_zero());
  PainleveAnswer shifted = painleve_map(target + 5);
  CHECK(shifted.eta == y);
  CHECK(shifted.C == Expression(c, 5));
  PainleveAnswer sheared = painleve_map(6 * (y + x) * (y + x) + x);
  CHECK(sheared.eta == y + x);
  CHECK(sheared.C.is_zero());

  PainleveAnswer flat = painleve_map(Expression(c, 0));
  CHECK(flat.in_class);
  CHECK_FALSE(flat.equivalent);
  CHECK(flat.residual == Expression(c, 12));

  PainleveAnswer cubic = painleve_map(var(c, "p").pow(3));
  CHECK_FALSE(cubic.in_class);
  CHECK(cubic.failing == "I2");

  std::mt19937_64 rng(31);
  for (int k = 0; k < 10; ++k) {
    Expression eta = oracles::random_eta(rng, c);
    Expression C(c, static_cast<long>(rng() % 11) - 5);
    PainleveAnswer a = painleve_map(pullback_ode2(eta, C, target));
    CHECK(a.equivalent);
    CHECK(a.eta == eta);
    CHECK(a.C == C);
  }
}

TEST_CASE("two second-order ODEs: point transforms of the flat system") {
  auto c = ode_system_chart();
  Expression t = var(c, "t"), x1 = var(c, "x1"), x2 = var(c, "x2");
  CHECK(check_flat_ode_system(Expression(c, 0), Expression(c, 0)).flat);

  FlatnessVerdict cubic = check_flat_ode_system(var(c, "dx2").pow(3), Expression(c, 0));
  CHECK_FALSE(cubic.flat);
  CHECK(cubic.failing() == 1);
  CHECK(cubic.residuals[1] == Expression(c, 6));

  auto [G1, G2] = oracles::flat_system_image(t, x1 + x2 * x2, x2);
  CHECK(G1 == -2 * var(c, "dx2").pow(2));
  CHECK(G2.is_zero());

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> v(-3, 3);
  auto small = [&] { return Expression(c, v(rng)); };
  const Expression quadratic[] = {x1 * x1, x2 * x2, x1 * x2, t * x1, t * t};
  for (int k = 0; k < 6; ++k) {
    Expression tau = t + (k < 3 ? small() * x1 + small() * x2 / Rational(5) : Expression(c, 0));
    Expression phi1 = x1 + small() * x2 + small() * t;
    Expression phi2 = x2 + small() * x1 / Rational(7) + small() * t;
    if (k >= 3) {
      phi1 += small() * quadratic[rng() % 5];
      phi2 += small() * quadratic[rng() % 5];
    }
    auto [F1, F2] = oracles::flat_system_image(tau, phi1, phi2);
    FlatnessVerdict r = check_flat_ode_system(F1, F2);
    CHECK_MESSAGE(r.flat, to_text(F1) << " ; " << to_text(F2));
  }
}

TEST_CASE("second-order PDE systems") {
  auto c = pde_system_chart();
  Expression zero(c, 0), u1 = var(c, "u1"), u2 = var(c, "u2");
  CHECK(check_flat_pde_system(zero, zero, zero).flat);
  FlatnessVerdict sq = check_flat_pde_system(u2 * u2, zero, zero);
  CHECK(sq.failing() == 0);
  CHECK(sq.residuals[0] == Expression(c, 2));

  std::mt19937_64 rng(9);
  std::vector<Symbol> base = {Chart::variable_symbol(0), Chart::variable_symbol(1), Chart::variable_symbol(2)};
  auto coefficient = [&] { return Expression::polynomial(c, testing_support::random_polynomial(rng, base, 2, 2)); };
  for (int k = 0; k < 5; ++k) {
    Expression f[3];
    for (auto& e : f) e = coefficient() + coefficient() * u1 + coefficient() * u2;
    CHECK(check_flat_pde_system(f[0], f[1], f[2]).flat);
  }
  // The opaque system is not flat; every residual mentions second derivatives.
  FlatnessVerdict opaque = check_flat_pde_system(var(c, "f11"), var(c, "f12"), var(c, "f22"));
  CHECK_FALSE(opaque.flat);
  CHECK(opaque.residuals[0] == var(c, "f11_u2_u2"));
}

TEST_CASE("third-order prolongation and expression swell") {
  auto c = ode3_chart();
  Expression x = var(c, "x"), y = var(c, "y"), p = var(c, "p"), q = var(c, "q"), f = var(c, "f");
  SwellReport id = contact_prolongation_ode3(x, y);
  CHECK(id.pbar == p);
  CHECK(id.qbar == q);
  CHECK(id.rbar == f);
  CHECK(id.monomials[0] == 1);
  CHECK(id.monomials[1] == 1);
  CHECK(id.monomials[2] == 1);

  SwellReport shear = contact_prolongation_ode3(x, y + x * x);
  CHECK(shear.pbar == p + 2 * x);
  CHECK(shear.qbar == q + 2);
  CHECK(shear.rbar == f);

  SwellReport opaque = contact_prolongation_ode3(var(c, "xi"), var(c, "eta"));
  CHECK(opaque.monomials[2] >= 100);
  CHECK(opaque.monomials[2] == 510);

  // r-bar equals D(q-bar)/D(xi) with q-bar from the closed formula.
  Derivation D(c);
  D.set("x", Expression(c, 1));
  D.set("y", p);
  D.set("p", q);
  D.set("q", f);
  Expression xi = var(c, "xi"), eta = var(c, "eta");
  Expression qbar = (D(D(eta)) * D(xi) - D(eta) * D(D(xi))) / D(xi).pow(3);
  CHECK(opaque.qbar == qbar);

  CHECK_THROWS_AS(contact_prolongation_ode3(Expression(c, 1), y), VanishingJacobian);
  CHECK_THROWS_AS(contact_prolongation_ode3(q, y), DomainError);
}
