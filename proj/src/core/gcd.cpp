// Multivariate polynomial GCD over the rationals.
//
// The expressions met in practice are sparse and share few variables, and
// most gcd calls return 1. The algorithm therefore peels off cheap cases
// before the general algorithm:
//
//   1. monomial content is split off exactly;
//   2. a variable present in only one operand cannot occur in the gcd, so
//      that operand is replaced by its coefficients with respect to such
//      variables;
//   3. a modular image in one main variable (all others specialized) bounds
//      the gcd degree in that variable; a constant image proves the gcd lies
//      in the coefficient ring;
//   4. otherwise content/primitive-part splitting plus a dense modular gcd,
//      with the subresultant PRS as a last resort.

#include <algorithm>
#include <cstdint>
#include <random>

#include "cartan/polynomial.hpp"
#include "modular_gcd.hpp"

namespace cartan {
namespace {

constexpr std::uint64_t kPrime = 2147483647;  // 2^31 - 1

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) { return (a * b) % kPrime; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  a %= kPrime;
  while (e > 0) {
    if (e & 1u) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1u;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

// Reduces a rational modulo the prime; nullopt if the denominator vanishes.
std::optional<std::uint64_t> reduce(const Rational& q) {
  unsigned long den = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  if (den == 0) return std::nullopt;
  unsigned long num = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  return mul_mod(num, inv_mod(den));
}

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ModPoly mod_gcd(ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::uint64_t inv = inv_mod(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t factor = mul_mod(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k)
        a[k + shift] = (a[k + shift] + kPrime - mul_mod(factor, b[k])) % kPrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

struct Image {
  ModPoly values;
  bool ok = true;
};

Image image_in(const Polynomial& p, Symbol main,
               const std::vector<std::pair<Symbol, std::uint64_t>>& point) {
  Image img;
  img.values.assign(p.degree_in(main) + 1, 0);
  for (const Term& t : p.terms()) {
    auto c = reduce(t.coefficient);
    if (!c) return {{}, false};
    std::uint64_t v = *c;
    std::uint32_t e_main = 0;
    for (const Power& pw : t.monomial.powers()) {
      if (pw.symbol == main) {
        e_main = pw.exponent;
        continue;
      }
      auto it = std::lower_bound(point.begin(), point.end(), pw.symbol,
                                 [](const auto& a, Symbol s) { return a.first < s; });
      v = mul_mod(v, pow_mod(it->second, pw.exponent));
    }
    img.values[e_main] = (img.values[e_main] + v) % kPrime;
  }
  return img;
}

// True when a modular image certifies that gcd(a, b) has degree zero in
// `main`. A false result is inconclusive.
bool coprime_in(const Polynomial& a, const Polynomial& b, Symbol main,
                const std::vector<Symbol>& symbols, std::mt19937_64& rng) {
  std::uint32_t da = a.degree_in(main), db = b.degree_in(main);
  if (da == 0 || db == 0) return true;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<std::pair<Symbol, std::uint64_t>> point;
    for (Symbol s : symbols)
      if (s != main) point.emplace_back(s, 1 + rng() % (kPrime - 1));
    Image ia = image_in(a, main, point), ib = image_in(b, main, point);
    if (!ia.ok || !ib.ok) return false;
    // A vanishing leading coefficient would make the bound unsound.
    if (ia.values.size() != da + 1 || ia.values.back() == 0) continue;
    if (ib.values.size() != db + 1 || ib.values.back() == 0) continue;
    return mod_gcd(ia.values, ib.values).size() == 1;
  }
  return false;
}

Polynomial gcd_of(std::vector<Polynomial> polys);

// ---------------------------------------------------------- subresultants

using UPoly = std::vector<Polynomial>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly pseudo_remainder(const UPoly& f, const UPoly& g) {
  UPoly r = f;
  const Polynomial& lc_g = g.back();
  int e = degree(f) - degree(g) + 1;
  while (!r.empty() && degree(r) >= degree(g)) {
    Polynomial lr = r.back();
    std::size_t shift = static_cast<std::size_t>(degree(r) - degree(g));
    for (Polynomial& c : r) c = c * lc_g;
    for (std::size_t k = 0; k < g.size(); ++k) r[k + shift] -= lr * g[k];
    r.back() = Polynomial();
    trim(r);
    --e;
  }
  if (e > 0) {
    Polynomial scale = lc_g.pow(static_cast<unsigned>(e));
    for (Polynomial& c : r) c = c * scale;
  }
  return r;
}

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = a.divide_exact(b);
  if (!q) throw std::logic_error("inexact division in subresultant PRS");
  return std::move(*q);
}

// gcd of two primitive polynomials in `main`, as a primitive polynomial.
Polynomial subresultant_gcd(const Polynomial& a, const Polynomial& b, Symbol main) {
  UPoly f = a.coefficients_in(main), g = b.coefficients_in(main);
  if (degree(f) < degree(g)) std::swap(f, g);
  Polynomial sg(1), sh(1);
  for (;;) {
    int delta = degree(f) - degree(g);
    UPoly r = pseudo_remainder(f, g);
    if (r.empty()) break;
    if (degree(r) == 0) return Polynomial(1);
    f = std::move(g);
    Polynomial divisor = sg * sh.pow(static_cast<unsigned>(delta));
    for (Polynomial& c : r) c = exact(c, divisor);
    g = std::move(r);
    sg = f.back();
    if (delta == 1) {
      sh = sg;
    } else if (delta > 1) {
      sh = exact(sg.pow(static_cast<unsigned>(delta)), sh.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Polynomial content = gcd_of(std::vector<Polynomial>(g.begin(), g.end()));
  for (Polynomial& c : g) c = exact(c, content);
  return Polynomial::from_coefficients(main, g).monic();
}

std::vector<Symbol> intersect(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  std::vector<Symbol> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Symbol> difference(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  std::vector<Symbol> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Both operands share exactly the variables in `vars` and have no monomial
// content.
Polynomial gcd_same_support(const Polynomial& a, const Polynomial& b,
                            const std::vector<Symbol>& vars) {
  const Polynomial& small = a.size() <= b.size() ? a : b;
  const Polynomial& large = a.size() <= b.size() ? b : a;
  if (small.leading_term().monomial.divides(large.leading_term().monomial))
    if (large.divide_exact(small)) return small.monic();

  std::mt19937_64 rng(0x5eed + a.size() * 131 + b.size());
  std::vector<Symbol> order = vars;
  std::sort(order.begin(), order.end(), [&](Symbol u, Symbol v) {
    return std::max(a.degree_in(u), b.degree_in(u)) < std::max(a.degree_in(v), b.degree_in(v));
  });
  for (Symbol v : order) {
    if (coprime_in(a, b, v, vars, rng)) {
      std::vector<Polynomial> coeffs;
      for (auto& c : a.coefficients_in(v))
        if (!c.is_zero()) coeffs.push_back(std::move(c));
      for (auto& c : b.coefficients_in(v))
        if (!c.is_zero()) coeffs.push_back(std::move(c));
      return gcd_of(std::move(coeffs));
    }
  }

  Symbol main = order.front();
  auto content = [&](const Polynomial& p) {
    std::vector<Polynomial> coeffs;
    for (auto& c : p.coefficients_in(main))
      if (!c.is_zero()) coeffs.push_back(std::move(c));
    return gcd_of(std::move(coeffs));
  };
  Polynomial ca = content(a), cb = content(b);
  Polynomial pa = exact(a, ca), pb = exact(b, cb);
  Polynomial c = gcd(ca, cb);
  if (auto m = detail::modular_gcd(pa, pb, vars))
    return (c * *m).monic();
  return (c * subresultant_gcd(pa, pb, main)).monic();
}

Polynomial gcd_without_content(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  std::vector<Symbol> sa = a.symbols(), sb = b.symbols();
  std::vector<Symbol> common = intersect(sa, sb);
  if (common.empty()) return Polynomial(1);
  std::vector<Symbol> only_a = difference(sa, common), only_b = difference(sb, common);
  if (!only_a.empty() || !only_b.empty()) {
    std::vector<Polynomial> parts;
    if (only_a.empty())
      parts.push_back(a);
    else
      for (auto& c : a.coefficients_over(only_a)) parts.push_back(std::move(c));
    if (only_b.empty())
      parts.push_back(b);
    else
      for (auto& c : b.coefficients_over(only_b)) parts.push_back(std::move(c));
    return gcd_of(std::move(parts));
  }
  return gcd_same_support(a, b, common);
}

Polynomial gcd_of(std::vector<Polynomial> polys) {
  std::erase_if(polys, [](const Polynomial& p) { return p.is_zero(); });
  if (polys.empty()) return Polynomial();
  std::sort(polys.begin(), polys.end(),
            [](const Polynomial& x, const Polynomial& y) { return x.weight() < y.weight(); });
  Polynomial g = polys.front().monic();
  for (std::size_t k = 1; k < polys.size(); ++k) {
    if (g.is_constant()) break;
    g = gcd(g, polys[k]);
  }
  return g;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  Monomial ma = a.monomial_content(), mb = b.monomial_content();
  Monomial shared = Monomial::gcd(ma, mb);
  Polynomial g = gcd_without_content(a.divide_monomial(ma), b.divide_monomial(mb));
  return g.times(shared).monic();
}

}  // namespace cartan
