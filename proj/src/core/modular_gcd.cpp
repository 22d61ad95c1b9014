#include "modular_gcd.hpp"

#include <algorithm>
#include <map>

namespace cartan::detail {
namespace {

using u64 = std::uint64_t;
using Exponents = std::vector<std::uint32_t>;

struct Field {
  u64 p;
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
  u64 mul(u64 a, u64 b) const {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
  }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

// ---------------------------------------------------------------- univariate

using UP = std::vector<u64>;  // coefficient of x^k at index k

void trim(UP& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

int deg(const UP& u) { return static_cast<int>(u.size()) - 1; }

u64 eval(const Field& f, const UP& u, u64 x) {
  u64 r = 0;
  for (std::size_t k = u.size(); k-- > 0;) r = f.add(f.mul(r, x), u[k]);
  return r;
}

UP mul(const Field& f, const UP& a, const UP& b) {
  if (a.empty() || b.empty()) return {};
  UP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  trim(r);
  return r;
}

// a = q b + r
void divmod(const Field& f, UP a, const UP& b, UP& q, UP& r) {
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  u64 inv = f.inv(b.back());
  for (int k = deg(a); k >= deg(b); --k) {
    u64 c = f.mul(a[k], inv);
    if (c == 0) continue;
    std::size_t shift = static_cast<std::size_t>(k - deg(b));
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
  }
  trim(a);
  trim(q);
  r = std::move(a);
}

UP monic(const Field& f, UP u) {
  if (u.empty()) return u;
  u64 inv = f.inv(u.back());
  for (u64& c : u) c = f.mul(c, inv);
  return u;
}

UP gcd(const Field& f, UP a, UP b) {
  while (!b.empty()) {
    UP q, r;
    divmod(f, std::move(a), b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, std::move(a));
}

// -------------------------------------------------------------- multivariate

struct MTerm {
  Exponents e;
  u64 c;
};
// Terms in strictly decreasing lex order, nonzero coefficients.
using MP = std::vector<MTerm>;

void normalize_mod(const Field& f, MP& a) {
  std::sort(a.begin(), a.end(), [](const MTerm& x, const MTerm& y) { return x.e > y.e; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < a.size();) {
    std::size_t j = i;
    u64 s = 0;
    for (; j < a.size() && a[j].e == a[i].e; ++j) s = f.add(s, a[j].c);
    if (s != 0) {
      a[out].e = a[i].e;
      a[out].c = s;
      ++out;
    }
    i = j;
  }
  a.resize(out);
}

MP combine(const Field& f, const MP& a, const MP& b, u64 scale_b) {
  MP r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].e > b[j].e)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].e > a[i].e) {
      u64 c = f.mul(b[j].c, scale_b);
      if (c) r.push_back({b[j].e, c});
      ++j;
    } else {
      u64 c = f.add(a[i].c, f.mul(b[j].c, scale_b));
      if (c) r.push_back({a[i].e, c});
      ++i;
      ++j;
    }
  }
  return r;
}

std::optional<MP> divide(const Field& f, const MP& a, const MP& b) {
  std::map<Exponents, u64, std::greater<>> rem;
  for (const MTerm& t : a) rem[t.e] = t.c;
  const MTerm& lead = b.front();
  u64 inv = f.inv(lead.c);
  MP q;
  while (!rem.empty()) {
    auto it = rem.begin();
    Exponents e = it->first;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] < lead.e[k]) return std::nullopt;
      e[k] -= lead.e[k];
    }
    u64 c = f.mul(it->second, inv);
    q.push_back({e, c});
    for (const MTerm& t : b) {
      Exponents m = t.e;
      for (std::size_t k = 0; k < m.size(); ++k) m[k] += e[k];
      auto slot = rem.find(m);
      u64 v = f.neg(f.mul(c, t.c));
      if (slot == rem.end()) {
        rem.emplace(std::move(m), v);
      } else {
        slot->second = f.add(slot->second, v);
        if (slot->second == 0) rem.erase(slot);
      }
    }
  }
  return q;
}

// Terms sharing all exponents but the last are contiguous; visit each run
// as a univariate polynomial in the last variable.
template <typename Visit>
void runs(const MP& a, Visit visit) {
  for (std::size_t i = 0; i < a.size();) {
    std::size_t j = i;
    UP u;
    for (; j < a.size() && std::equal(a[j].e.begin(), a[j].e.end() - 1, a[i].e.begin()); ++j) {
      std::uint32_t d = a[j].e.back();
      if (u.size() <= d) u.resize(d + 1, 0);
      u[d] = a[j].c;
    }
    visit(a[i].e, u);
    i = j;
  }
}

UP content_last(const Field& f, const MP& a) {
  UP g;
  runs(a, [&](const Exponents&, const UP& u) {
    if (g.size() != 1) g = g.empty() ? monic(f, u) : gcd(f, g, u);
  });
  return g;
}

UP leading_last(const MP& a) {
  UP out;
  bool first = true;
  runs(a, [&](const Exponents&, const UP& u) {
    if (first) out = u;
    first = false;
  });
  return out;
}

std::uint32_t degree_last(const MP& a) {
  std::uint32_t d = 0;
  for (const MTerm& t : a) d = std::max(d, t.e.back());
  return d;
}

MP times_univariate(const Field& f, const MP& a, const UP& u) {
  MP r;
  for (const MTerm& t : a)
    for (std::size_t k = 0; k < u.size(); ++k)
      if (u[k]) {
        MTerm x = t;
        x.e.back() += static_cast<std::uint32_t>(k);
        x.c = f.mul(t.c, u[k]);
        r.push_back(std::move(x));
      }
  normalize_mod(f, r);
  return r;
}

std::optional<MP> divide_univariate(const Field& f, const MP& a, const UP& u) {
  MP r;
  bool ok = true;
  runs(a, [&](const Exponents& e, const UP& v) {
    if (!ok) return;
    UP q, rem;
    divmod(f, v, u, q, rem);
    if (!rem.empty()) {
      ok = false;
      return;
    }
    for (std::size_t k = 0; k < q.size(); ++k)
      if (q[k]) {
        Exponents x = e;
        x.back() = static_cast<std::uint32_t>(k);
        r.push_back({std::move(x), q[k]});
      }
  });
  if (!ok) return std::nullopt;
  normalize_mod(f, r);
  return r;
}

MP evaluate_last(const Field& f, const MP& a, u64 x) {
  MP r;
  r.reserve(a.size());
  for (const MTerm& t : a) {
    Exponents e(t.e.begin(), t.e.end() - 1);
    r.push_back({std::move(e), f.mul(t.c, f.pow(x, t.e.back()))});
  }
  normalize_mod(f, r);
  return r;
}

MP lift(const MP& a) {
  MP r = a;
  for (MTerm& t : r) t.e.push_back(0);
  return r;
}

MP from_univariate(const UP& u, std::size_t k) {
  MP r;
  for (std::size_t d = u.size(); d-- > 0;)
    if (u[d]) {
      Exponents e(k, 0);
      e.back() = static_cast<std::uint32_t>(d);
      r.push_back({std::move(e), u[d]});
    }
  return r;
}

bool is_constant(const MP& a) {
  return a.size() == 1 && std::all_of(a[0].e.begin(), a[0].e.end(), [](auto x) { return x == 0; });
}

// Brown's recursive dense gcd over Z_p in k variables; the last variable is
// evaluated and interpolated.
std::optional<MP> gcd_mod(const Field& f, const MP& a0, const MP& b0, std::size_t k) {
  if (k == 1) {
    UP ua, ub;
    runs(a0, [&](const Exponents&, const UP& u) { ua = u; });
    runs(b0, [&](const Exponents&, const UP& u) { ub = u; });
    return from_univariate(gcd(f, ua, ub), 1);
  }
  UP ca = content_last(f, a0), cb = content_last(f, b0);
  MP a = *divide_univariate(f, a0, ca), b = *divide_univariate(f, b0, cb);
  UP c = gcd(f, ca, cb);
  UP la = leading_last(a), lb = leading_last(b);
  UP g = gcd(f, la, lb);
  std::size_t bound = static_cast<std::size_t>(deg(g)) + std::min(degree_last(a), degree_last(b)) + 1;

  MP h;
  UP q{1};
  Exponents lead;
  std::size_t points = 0, tries = 0;
  for (u64 x = 1; x < f.p && tries < 4 * bound + 64; ++x) {
    if (eval(f, la, x) == 0 || eval(f, lb, x) == 0) continue;
    ++tries;
    auto image = gcd_mod(f, evaluate_last(f, a, x), evaluate_last(f, b, x), k - 1);
    if (!image) return std::nullopt;
    MP gx = std::move(*image);
    u64 s = f.mul(eval(f, g, x), f.inv(gx.front().c));
    for (MTerm& t : gx) t.c = f.mul(t.c, s);
    if (is_constant(gx)) return from_univariate(c, k);

    const Exponents& lx = gx.front().e;
    if (points == 0 || lx < lead) {
      h = lift(gx);
      q = {f.neg(x), 1};
      lead = lx;
      points = 1;
      if (bound > 1) continue;
    } else if (lx > lead) {
      continue;
    } else {
      MP diff = combine(f, gx, evaluate_last(f, h, x), f.neg(1));
      bool unchanged = diff.empty();
      if (!unchanged) {
        u64 w = f.inv(eval(f, q, x));
        h = combine(f, h, times_univariate(f, lift(diff), q), w);
      }
      q = mul(f, q, UP{f.neg(x), 1});
      ++points;
      if (!unchanged && points < bound) continue;
    }
    UP ch = content_last(f, h);
    MP candidate = *divide_univariate(f, h, ch);
    if (divide(f, a, candidate) && divide(f, b, candidate)) return times_univariate(f, candidate, c);
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ integers

struct ZTerm {
  Exponents e;
  mpz_class c;
};

std::vector<ZTerm> integral(const Polynomial& p, const std::vector<Symbol>& vars) {
  mpz_class den = 1, num = 0;
  for (const Term& t : p.terms()) {
    den = lcm(den, mpz_class(t.coefficient.get_den()));
    num = gcd(num, mpz_class(t.coefficient.get_num()));
  }
  std::vector<ZTerm> out;
  for (const Term& t : p.terms()) {
    Exponents e(vars.size(), 0);
    for (const Power& pw : t.monomial.powers())
      e[static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), pw.symbol) - vars.begin())] = pw.exponent;
    mpz_class c = t.coefficient.get_num() * (den / mpz_class(t.coefficient.get_den())) / num;
    out.push_back({std::move(e), std::move(c)});
  }
  std::sort(out.begin(), out.end(), [](const ZTerm& x, const ZTerm& y) { return x.e > y.e; });
  return out;
}

MP reduce(const std::vector<ZTerm>& a, u64 p) {
  MP r;
  mpz_class m;
  for (const ZTerm& t : a) {
    m = t.c % mpz_class(static_cast<unsigned long>(p));
    if (m < 0) m += static_cast<unsigned long>(p);
    u64 c = m.get_ui();
    if (c) r.push_back({t.e, c});
  }
  return r;
}

Polynomial to_polynomial(const std::map<Exponents, mpz_class, std::greater<>>& h,
                         const std::vector<Symbol>& vars) {
  std::vector<Term> terms;
  for (const auto& [e, c] : h) {
    if (c == 0) continue;
    std::vector<Power> powers;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) powers.push_back({vars[k], e[k]});
    terms.push_back({Monomial::from_powers(std::move(powers)), Rational(c)});
  }
  return Polynomial::from_terms(std::move(terms));
}

}  // namespace

std::optional<Polynomial> modular_gcd(const Polynomial& a, const Polynomial& b,
                                      const std::vector<Symbol>& vars_in) {
  std::vector<Symbol> vars = vars_in;
  std::sort(vars.begin(), vars.end());
  std::vector<ZTerm> za = integral(a, vars), zb = integral(b, vars);
  const mpz_class& lca = za.front().c;
  const mpz_class& lcb = zb.front().c;
  mpz_class gamma = gcd(lca, lcb);

  std::map<Exponents, mpz_class, std::greater<>> h;
  Exponents lead;
  mpz_class modulus = 0;
  Polynomial previous;
  mpz_class candidate = (mpz_class(1) << 62) - 1;
  for (int primes = 0; primes < 64;) {
    candidate -= 2;
    if (mpz_probab_prime_p(candidate.get_mpz_t(), 25) == 0) continue;
    if (lca % candidate == 0 || lcb % candidate == 0) continue;
    ++primes;
    Field f{candidate.get_ui()};
    auto image = gcd_mod(f, reduce(za, f.p), reduce(zb, f.p), vars.size());
    if (!image) return std::nullopt;
    MP g = std::move(*image);
    if (is_constant(g)) return Polynomial(1);
    mpz_class gm = gamma % candidate;
    if (gm < 0) gm += candidate;
    u64 s = f.mul(gm.get_ui(), f.inv(g.front().c));
    for (MTerm& t : g) t.c = f.mul(t.c, s);

    if (modulus == 0 || g.front().e < lead) {
      h.clear();
      for (const MTerm& t : g) h[t.e] = static_cast<unsigned long>(t.c);
      lead = g.front().e;
      modulus = candidate;
      previous = Polynomial();
      continue;
    }
    if (g.front().e > lead) continue;

    // Chinese remaindering of every coefficient.
    mpz_class mod_p = modulus % candidate;
    u64 inv_m = f.inv(mod_p.get_ui());
    for (const MTerm& t : g) h.try_emplace(t.e, 0);
    std::size_t gi = 0;
    for (auto& [e, c] : h) {
      u64 target = 0;
      while (gi < g.size() && g[gi].e > e) ++gi;
      if (gi < g.size() && g[gi].e == e) target = g[gi].c;
      mpz_class cm = c % candidate;
      u64 delta = f.mul(f.sub(target, cm.get_ui()), inv_m);
      c += modulus * static_cast<unsigned long>(delta);
    }
    modulus *= candidate;

    std::map<Exponents, mpz_class, std::greater<>> sym = h;
    mpz_class half = modulus / 2;
    for (auto& [e, c] : sym)
      if (c > half) c -= modulus;
    Polynomial current = to_polynomial(sym, vars);
    if (current == previous && !current.is_zero()) {
      Polynomial pp = current.monic();
      if (a.divide_exact(pp) && b.divide_exact(pp)) return pp;
    }
    previous = std::move(current);
  }
  return std::nullopt;
}

}  // namespace cartan::detail
