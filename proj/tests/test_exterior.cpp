#include "doctest.h"

#include "cartan/error.hpp"
#include "cartan/exterior.hpp"
#include "support.hpp"

using namespace cartan;
using testing_support::random_form;
using testing_support::symbols_of;

namespace {

ChartPtr xyp() {
  ChartSpec spec;
  spec.coordinates = {"x", "y", "p"};
  spec.parameters = {"a3"};
  spec.functions = {{"f", {"x", "y", "p"}}};
  return Chart::make(spec);
}

DifferentialForm dv(const ChartPtr& c, const char* name) { return DifferentialForm::differential(c, name); }
Expression var(const ChartPtr& c, const char* name) { return Expression::named(c, name); }

}  // namespace

TEST_CASE("wedge products of basis differentials") {
  auto c = xyp();
  CHECK(wedge(dv(c, "x"), dv(c, "x")).is_zero());
  auto dxdy = wedge(dv(c, "x"), dv(c, "y"));
  CHECK(dxdy.coefficient({0, 1}) == Expression(c, 1));
  CHECK(wedge(dv(c, "y"), dv(c, "x")) == -dxdy);
  auto pf = wedge(var(c, "p") * dv(c, "x"), var(c, "f") * dv(c, "y"));
  CHECK(pf.coefficient({0, 1}) == var(c, "p") * var(c, "f"));
  DifferentialForm top = wedge(wedge(dv(c, "x"), dv(c, "y")), wedge(dv(c, "p"), dv(c, "a3")));
  CHECK_THROWS_AS(wedge(top, dv(c, "x")), DegreeOverflow);
}

TEST_CASE("exterior derivative sign conventions") {
  auto c = xyp();
  CHECK(d(var(c, "x") * dv(c, "y")) == wedge(dv(c, "x"), dv(c, "y")));
  CHECK(d(var(c, "p") * dv(c, "x")) == wedge(dv(c, "p"), dv(c, "x")));
  DifferentialForm w = dv(c, "y") - var(c, "p") * dv(c, "x");
  CHECK(d(w).coefficient({0, 2}) == Expression(c, 1));
  CHECK(d(DifferentialForm::scalar(var(c, "f"))).coefficient(key_of({2})) == var(c, "f_p"));
}

TEST_CASE("graded anticommutativity, Leibniz rule and d^2 = 0 on random forms") {
  auto c = xyp();
  std::mt19937_64 rng(99);
  for (int round = 0; round < 25; ++round) {
    unsigned da = static_cast<unsigned>(rng() % 3), db = static_cast<unsigned>(rng() % 2);
    DifferentialForm a = random_form(rng, c, da), b = random_form(rng, c, db);
    DifferentialForm ab = wedge(a, b), ba = wedge(b, a);
    CHECK(((da * db) % 2 == 0 ? ab == ba : ab == -ba));
    CHECK(d(d(a)).is_zero());
    Expression h = testing_support::random_expression(rng, c, symbols_of(c), true);
    DifferentialForm lhs = d(h * a);
    DifferentialForm rhs = wedge(d(DifferentialForm::scalar(h)), a) + h * d(a);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("coordinate coframe and trivial dual frame") {
  auto c = xyp();
  Coframe frame({dv(c, "x"), dv(c, "y"), dv(c, "p"), dv(c, "a3")});
  auto omega = wedge(dv(c, "x"), dv(c, "y"));
  CHECK(express_in_coframe(omega, frame).coefficient({0, 1}) == Expression(c, 1));
  auto xs = dual_frame(frame);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t v = 0; v < 4; ++v)
      CHECK(xs[i].component(v) == Expression(c, i == v ? 1 : 0));
}

TEST_CASE("random coframe: round trip, unit recovery, pairing and dH") {
  auto c = xyp();
  std::mt19937_64 rng(17);
  int built = 0;
  while (built < 4) {
    std::vector<DifferentialForm> forms;
    for (int k = 0; k < 4; ++k) forms.push_back(random_form(rng, c, 1));
    std::optional<Coframe> frame;
    try {
      frame.emplace(forms);
    } catch (const SingularCoframe&) {
      continue;
    }
    ++built;
    DifferentialForm two = wedge(forms[1], forms[3]);
    DifferentialForm coeffs = express_in_coframe(two, *frame);
    CHECK(coeffs.terms().size() == 1);
    CHECK(coeffs.coefficient({1, 3}) == Expression(c, 1));

    DifferentialForm omega = random_form(rng, c, 2);
    CHECK(expand_from_coframe(express_in_coframe(omega, *frame), *frame) == omega);

    auto xs = dual_frame(*frame);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(pairing(xs[i], forms[j]) == Expression(c, i == j ? 1 : 0));

    Expression h = testing_support::random_expression(rng, c, symbols_of(c), false);
    DifferentialForm dh(c, 1);
    for (std::size_t i = 0; i < 4; ++i) dh += xs[i](h) * forms[i];
    CHECK(dh == d(DifferentialForm::scalar(h)));
  }
}

TEST_CASE("singular coframe is rejected") {
  auto c = xyp();
  CHECK_THROWS_AS(Coframe({dv(c, "x"), dv(c, "y"), dv(c, "x") + dv(c, "y"), dv(c, "a3")}), SingularCoframe);
}
