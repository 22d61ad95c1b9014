#include "doctest.h"

#include "support.hpp"

using namespace cartan;
using testing_support::Point;
using testing_support::random_polynomial;

namespace {
const Symbol x = Symbol::variable(0), y = Symbol::variable(1), z = Symbol::variable(2);
Polynomial P(Symbol s) { return Polynomial::symbol(s); }
}  // namespace

TEST_CASE("polynomial arithmetic is canonical") {
  Polynomial a = P(x) + P(y), b = P(x) - P(y);
  CHECK(a * b == P(x) * P(x) - P(y) * P(y));
  CHECK((a - a).is_zero());
  CHECK((a * a).size() == 3);
  CHECK(a.pow(3) == a * a * a);
  CHECK((P(x) * Polynomial(2) + Polynomial(1)).total_degree() == 1);
}

TEST_CASE("graded lex order puts higher degree first") {
  Polynomial p = P(x) + Polynomial(6) * P(y) * P(y);
  CHECK(p.leading_term().monomial == Monomial::of(y, 2));
  Polynomial q = P(y) + P(x);
  CHECK(q.leading_term().monomial == Monomial::of(x));
}

TEST_CASE("exact division") {
  Polynomial a = P(x) * P(x) - P(y) * P(y);
  auto q = a.divide_exact(P(x) - P(y));
  REQUIRE(q);
  CHECK(*q == P(x) + P(y));
  CHECK_FALSE(a.divide_exact(P(x) + Polynomial(1)));
}

TEST_CASE("coefficients round trip") {
  Polynomial p = P(x) * P(x) * P(y) + Polynomial(3) * P(x) + P(z);
  auto c = p.coefficients_in(x);
  REQUIRE(c.size() == 3);
  CHECK(c[2] == P(y));
  CHECK(Polynomial::from_coefficients(x, c) == p);
}

TEST_CASE("derivative agrees with the power rule") {
  Polynomial p = P(x).pow(3) * P(y) + P(x) * P(z);
  CHECK(p.derivative(x) == Polynomial(3) * P(x).pow(2) * P(y) + P(z));
  CHECK(p.derivative(y) == P(x).pow(3));
}

TEST_CASE("gcd of simple inputs") {
  CHECK(gcd(P(x) * P(x) - P(y) * P(y), P(x) - P(y)) == P(x) - P(y));
  CHECK(gcd(P(x), P(y)).is_one());
  CHECK(gcd(Polynomial(4) * P(x) * P(y), Polynomial(6) * P(x) * P(x)) == P(x));
  CHECK(gcd(Polynomial(), P(y) * Polynomial(3)) == P(y));
  CHECK(gcd(Polynomial(), Polynomial()).is_zero());
}

TEST_CASE("gcd recovers planted common factors") {
  std::mt19937_64 rng(7);
  std::vector<Symbol> vars{x, y, z};
  for (int round = 0; round < 60; ++round) {
    Polynomial a = random_polynomial(rng, vars, 3, 2);
    Polynomial b = random_polynomial(rng, vars, 3, 2);
    Polynomial c = random_polynomial(rng, vars, 2, 2);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    Polynomial g = gcd(a * c, b * c);
    // The planted factor divides the gcd, and the gcd divides both inputs.
    CHECK(g.divide_exact(c.monic()).has_value());
    CHECK((a * c).divide_exact(g).has_value());
    CHECK((b * c).divide_exact(g).has_value());
    // Cofactors are coprime: their gcd is one.
    Polynomial ca = *(a * c).divide_exact(g), cb = *(b * c).divide_exact(g);
    CHECK(gcd(ca, cb).is_one());
    CHECK(g.leading_term().coefficient == 1);
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(11);
  std::vector<Symbol> vars{x, y, z};
  Point pt(3);
  for (int round = 0; round < 30; ++round) {
    Polynomial a = random_polynomial(rng, vars, 4, 3), b = random_polynomial(rng, vars, 4, 3);
    CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
    CHECK((a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt));
  }
}
