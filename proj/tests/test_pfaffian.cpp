#include "doctest.h"

#include "cartan/error.hpp"
#include "cartan/pfaffian.hpp"
#include "support.hpp"

using namespace cartan;
using testing_support::numeric;
using testing_support::numeric_structure;
using testing_support::point_chart;
using testing_support::rational_rank;

namespace {

DifferentialForm dv(const ChartPtr& c, const char* name) { return DifferentialForm::differential(c, name); }

}  // namespace

TEST_CASE("contact systems") {
  auto s = contact_system(1, 1, 1);
  auto c = s.chart();
  REQUIRE(s.omega.size() == 1);
  CHECK(s.omega[0] == dv(c, "u") - Expression::variable(c, "u1") * dv(c, "x"));
  CHECK(s.theta[0] == dv(c, "x"));
  CHECK(is_linear(s));

  auto s2 = contact_system(1, 1, 2);
  auto c2 = s2.chart();
  REQUIRE(s2.omega.size() == 2);
  CHECK(s2.omega[1] == dv(c2, "u1") - Expression::variable(c2, "u2") * dv(c2, "x"));
  CHECK(is_linear(s2));

  auto s3 = contact_system(2, 1, 1);
  auto c3 = s3.chart();
  CHECK(s3.omega[0] == dv(c3, "u") - Expression::variable(c3, "u1") * dv(c3, "x1") -
                           Expression::variable(c3, "u2") * dv(c3, "x2"));
  CHECK(is_linear(s3));
  CHECK(is_linear(contact_system(2, 2, 2)));
}

TEST_CASE("linearity detects pi^pi terms") {
  ChartSpec spec;
  spec.coordinates = {"x1", "x2", "x3", "x4"};
  auto c = Chart::make(spec);
  PfaffianSystem s{{dv(c, "x1") - Expression::variable(c, "x3") * dv(c, "x4")},
                   {dv(c, "x2")},
                   {dv(c, "x3"), dv(c, "x4")}};
  CHECK_FALSE(is_linear(s));
  CHECK_THROWS_AS(structure_equations(s), NotLinear);

  PfaffianSystem frob{{dv(c, "x1")}, {dv(c, "x2"), dv(c, "x3"), dv(c, "x4")}, {}};
  CHECK(is_linear(frob));
}

TEST_CASE("structure equations of the first-order contact form") {
  ChartSpec spec;
  spec.coordinates = {"x", "y", "p"};
  auto c = Chart::make(spec);
  PfaffianSystem s{{dv(c, "y") - Expression::variable(c, "p") * dv(c, "x")}, {dv(c, "x")}, {dv(c, "p")}};
  auto e = structure_equations(s);
  // d omega = -dp ^ dx = -pi ^ theta.
  CHECK(e.A(0, 0, 0) == Expression(c, -1));
  CHECK(e.torsion[0][0][0].is_zero());

  PfaffianSystem flat{{dv(c, "y") + Expression(c, 3) * dv(c, "x")}, {dv(c, "x")}, {dv(c, "p")}};
  auto f = structure_equations(flat);
  CHECK(f.A(0, 0, 0).is_zero());
}

TEST_CASE("reconstruction identity for a curved system") {
  ChartSpec spec;
  spec.coordinates = {"x", "y", "p", "q"};
  spec.functions = {{"f", {"x", "y", "p"}}};
  auto c = Chart::make(spec);
  auto p = Expression::variable(c, "p"), f = Expression::named(c, "f");
  PfaffianSystem s{{dv(c, "y") - p * dv(c, "x"), dv(c, "p") - f * dv(c, "x") - Expression::variable(c, "q") * dv(c, "y")},
                   {dv(c, "x")},
                   {dv(c, "q")}};
  auto e = structure_equations(s);
  Coframe frame = s.coframe();
  for (std::size_t alpha = 0; alpha < s.omega.size(); ++alpha) {
    DifferentialForm full = express_in_coframe(d(s.omega[alpha]), frame);
    DifferentialForm mod_i(c, 2);
    for (const auto& [key, value] : full.terms())
      if ((key & 0b11u) == 0) mod_i.add(key, value);
    CHECK(mod_i == reconstruct(e, alpha, s.omega.size()));
  }
}

TEST_CASE("absorption corner cases") {
  std::mt19937_64 rng(3);
  auto zero_a = numeric_structure(rng, 2, 3, 2, 10);
  auto sol = absorb_torsion(zero_a);
  std::size_t nonzero = 0;
  for (const auto& t : torsion_vector(zero_a)) nonzero += t.is_zero() ? 0 : 1;
  CHECK(sol.essential.size() == nonzero);

  auto no_t = numeric_structure(rng, 2, 3, 2, 3);
  for (auto& m : no_t.torsion)
    for (auto& row : m)
      for (auto& x : row) x = Expression(no_t.chart, 0);
  auto sol2 = absorb_torsion(no_t);
  CHECK(sol2.essential.empty());
  for (const auto& l : sol2.lambda) CHECK(l.is_zero());
}

TEST_CASE("absorption agrees with a brute-force linear solve") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 30; ++round) {
    std::size_t a = 1 + rng() % 3, n = 1 + rng() % 3, r = 1 + rng() % 3;
    auto e = numeric_structure(rng, a, n, r, static_cast<int>(rng() % 8));
    auto sol = absorb_torsion(e);
    auto l = numeric(absorption_matrix(e));
    auto t = torsion_vector(e);
    auto aug = l;
    for (std::size_t row = 0; row < aug.size(); ++row) aug[row].push_back(t[row].constant_value());
    bool solvable = rational_rank(aug) == rational_rank(l);
    CHECK(solvable == sol.essential.empty());
    CHECK(sol.free.size() == r * n - rational_rank(l));
    if (solvable) {
      for (std::size_t row = 0; row < l.size(); ++row) {
        Rational lhs = 0;
        for (std::size_t u = 0; u < l[row].size(); ++u) lhs += l[row][u] * sol.lambda[u].constant_value();
        CHECK(lhs == t[row].constant_value());
      }
    }
    // The essential span does not depend on the elimination order.
    std::vector<std::size_t> reversed(r * n);
    for (std::size_t k = 0; k < reversed.size(); ++k) reversed[k] = reversed.size() - 1 - k;
    auto other = absorb_torsion(e, reversed);
    CHECK(other.essential.size() == sol.essential.size());
  }
}

TEST_CASE("cartan characters") {
  std::mt19937_64 rng(8);
  auto zero = numeric_structure(rng, 2, 3, 2, 10);
  auto rep = cartan_characters(zero);
  for (std::size_t s : rep.characters) CHECK(s == 0);
  CHECK(rep.involutive);

  for (int round = 0; round < 5; ++round) {
    auto e = numeric_structure(rng, 2, 2, 2, 4);
    auto report = cartan_characters(e);
    // Brute force: maximize flag ranks over 100 random flags.
    std::vector<std::size_t> best(3, 0);
    std::uniform_int_distribution<int> v(-50, 50);
    for (int k = 0; k < 100; ++k) {
      std::vector<std::vector<Rational>> flag(2, std::vector<Rational>(2));
      for (auto& row : flag)
        for (auto& x : row) x = v(rng);
      for (std::size_t len = 1; len <= 2; ++len) {
        std::vector<std::vector<Rational>> m;
        for (std::size_t alpha = 0; alpha < 2; ++alpha)
          for (std::size_t l = 0; l < len; ++l) {
            std::vector<Rational> row(2);
            for (std::size_t rho = 0; rho < 2; ++rho)
              for (std::size_t i = 0; i < 2; ++i) row[rho] += e.A(alpha, rho, i).constant_value() * flag[l][i];
            m.push_back(row);
          }
        best[len] = std::max(best[len], rational_rank(m));
      }
    }
    CHECK(report.characters[0] == best[1]);
    CHECK(report.characters[1] == best[2] - best[1]);
  }
}

TEST_CASE("prolongation of the first-order contact system") {
  auto s = contact_system(1, 1, 1);
  auto e = structure_equations(s);
  auto sol = absorb_torsion(e);
  CHECK(sol.essential.empty());
  REQUIRE(sol.free.size() == 1);
  auto p = prolong(s, sol, false, {"u2"});
  CHECK(p.chart()->dimension() == s.chart()->dimension() + 1);
  auto target = contact_system(1, 1, 2);
  REQUIRE(p.omega.size() == target.omega.size());
  for (std::size_t k = 0; k < p.omega.size(); ++k) CHECK(p.omega[k] == target.omega[k]);
  auto pe = structure_equations(p), te = structure_equations(target);
  CHECK(pe.tableau == te.tableau);
  CHECK(pe.torsion == te.torsion);
}

TEST_CASE("prolongation bookkeeping") {
  ChartSpec spec;
  spec.coordinates = {"x", "y", "p"};
  spec.functions = {{"f", {"x", "y", "p"}}};
  auto c = Chart::make(spec);
  // Two independence forms and a single pi: lambda fully determined.
  PfaffianSystem s{{dv(c, "y") - Expression::variable(c, "p") * dv(c, "x")}, {dv(c, "x")}, {dv(c, "p")}};
  auto sol = absorb_torsion(structure_equations(s));
  auto once = prolong(s, sol);
  CHECK(once.chart()->dimension() == 4);

  PfaffianSystem fixed{{dv(c, "y") - Expression::named(c, "f") * dv(c, "x")}, {dv(c, "x"), dv(c, "p")}, {}};
  auto fsol = absorb_torsion(structure_equations(fixed));
  CHECK_FALSE(fsol.essential.empty());
  CHECK_THROWS_AS(prolong(fixed, fsol), NonEmptyEssentialTorsion);
  auto accepted = prolong(fixed, fsol, true);
  CHECK(accepted.chart()->dimension() == 3);
}
