#include "cartan/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace cartan {

Symbol Symbol::function(std::uint16_t index, const Orders& orders) {
  std::uint64_t code = (std::uint64_t{1} << 63) | (std::uint64_t{index} << 48);
  for (std::size_t k = 0; k < kMaxArity; ++k)
    code |= std::uint64_t{orders[k]} << (40 - 8 * k);
  return Symbol(code);
}

Symbol::Orders Symbol::orders() const {
  Orders out{};
  if (is_function())
    for (std::size_t k = 0; k < kMaxArity; ++k) out[k] = order(k);
  return out;
}

unsigned Symbol::total_order() const {
  unsigned total = 0;
  if (is_function())
    for (std::size_t k = 0; k < kMaxArity; ++k) total += order(k);
  return total;
}

Symbol Symbol::differentiated(std::size_t argument) const {
  assert(is_function() && argument < kMaxArity);
  if (order(argument) == 0xff) throw std::overflow_error("derivative order overflow");
  return Symbol(code_ + (std::uint64_t{1} << (40 - 8 * argument)));
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Symbol s, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.powers_.push_back({s, exponent});
    m.degree_ = exponent;
  }
  return m;
}

Monomial Monomial::from_powers(std::vector<Power> powers) {
  std::sort(powers.begin(), powers.end(),
            [](const Power& a, const Power& b) { return a.symbol < b.symbol; });
  Monomial m;
  for (const Power& p : powers) {
    if (p.exponent == 0) continue;
    if (!m.powers_.empty() && m.powers_.back().symbol == p.symbol)
      m.powers_.back().exponent += p.exponent;
    else
      m.powers_.push_back(p);
    m.degree_ += p.exponent;
  }
  return m;
}

std::uint32_t Monomial::exponent(Symbol s) const {
  auto it = std::lower_bound(
      powers_.begin(), powers_.end(), s,
      [](const Power& p, Symbol key) { return p.symbol < key; });
  return (it != powers_.end() && it->symbol == s) ? it->exponent : 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.powers_.reserve(a.powers_.size() + b.powers_.size());
  auto i = a.powers_.begin(), j = b.powers_.begin();
  while (i != a.powers_.end() && j != b.powers_.end()) {
    if (i->symbol < j->symbol) {
      out.powers_.push_back(*i++);
    } else if (j->symbol < i->symbol) {
      out.powers_.push_back(*j++);
    } else {
      out.powers_.push_back({i->symbol, i->exponent + j->exponent});
      ++i;
      ++j;
    }
  }
  out.powers_.insert(out.powers_.end(), i, a.powers_.end());
  out.powers_.insert(out.powers_.end(), j, b.powers_.end());
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  auto j = other.powers_.begin();
  for (const Power& p : powers_) {
    while (j != other.powers_.end() && j->symbol < p.symbol) ++j;
    if (j == other.powers_.end() || j->symbol != p.symbol || j->exponent < p.exponent)
      return false;
  }
  return true;
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
  if (!divisor.divides(*this)) return std::nullopt;
  Monomial out;
  out.powers_.reserve(powers_.size());
  auto j = divisor.powers_.begin();
  for (const Power& p : powers_) {
    if (j != divisor.powers_.end() && j->symbol == p.symbol) {
      if (p.exponent > j->exponent) out.powers_.push_back({p.symbol, p.exponent - j->exponent});
      ++j;
    } else {
      out.powers_.push_back(p);
    }
  }
  out.degree_ = degree_ - divisor.degree_;
  return out;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto i = a.powers_.begin(), j = b.powers_.begin();
  while (i != a.powers_.end() && j != b.powers_.end()) {
    if (i->symbol < j->symbol) {
      ++i;
    } else if (j->symbol < i->symbol) {
      ++j;
    } else {
      std::uint32_t e = std::min(i->exponent, j->exponent);
      out.powers_.push_back({i->symbol, e});
      out.degree_ += e;
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial Monomial::without(Symbol s) const { return with_exponent(s, 0); }

Monomial Monomial::with_exponent(Symbol s, std::uint32_t exponent) const {
  Monomial out;
  out.powers_.reserve(powers_.size() + 1);
  bool placed = false;
  for (const Power& p : powers_) {
    if (!placed && !(p.symbol < s)) {
      if (exponent > 0) out.powers_.push_back({s, exponent});
      placed = true;
      if (p.symbol == s) continue;
    }
    out.powers_.push_back(p);
  }
  if (!placed && exponent > 0) out.powers_.push_back({s, exponent});
  for (const Power& p : out.powers_) out.degree_ += p.exponent;
  return out;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  auto pa = a.powers(), pb = b.powers();
  std::size_t n = std::min(pa.size(), pb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (pa[i].symbol != pb[i].symbol) return pa[i].symbol < pb[i].symbol ? 1 : -1;
    if (pa[i].exponent != pb[i].exponent) return pa[i].exponent > pb[i].exponent ? 1 : -1;
  }
  if (pa.size() != pb.size()) return pa.size() > pb.size() ? 1 : -1;
  return 0;
}

// -------------------------------------------------------------- Polynomial

namespace {

bool greater(const Term& a, const Term& b) { return compare(a.monomial, b.monomial) > 0; }

// Merges two sorted term lists as a + sign*b.
std::vector<Term> merge(std::span<const Term> a, std::span<const Term> b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].monomial, b[j].monomial);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coefficient = -out.back().coefficient;
    } else {
      Rational sum = a[i].coefficient;
      if (subtract)
        sum -= b[j].coefficient;
      else
        sum += b[j].coefficient;
      if (sgn(sum) != 0) out.push_back({a[i].monomial, std::move(sum)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (subtract) out.back().coefficient = -out.back().coefficient;
  }
  return out;
}

}  // namespace

// Callers may hand in rationals such as 2/2; every entry point canonicalizes.
Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) {
    terms_.push_back({Monomial(), c});
    terms_[0].coefficient.canonicalize();
  }
}

Polynomial Polynomial::symbol(Symbol s, std::uint32_t exponent) {
  return monomial(Monomial::of(s, exponent));
}

Polynomial Polynomial::monomial(Monomial m, Rational c) {
  Polynomial p;
  c.canonicalize();
  if (sgn(c) != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  for (Term& t : terms) t.coefficient.canonicalize();
  std::sort(terms.begin(), terms.end(), greater);
  Polynomial p;
  p.terms_.reserve(terms.size());
  for (Term& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coefficient += t.coefficient;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coefficient) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coefficient) == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coefficient == 1;
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].coefficient;
}

std::size_t Polynomial::weight() const {
  std::size_t w = 0;
  for (const Term& t : terms_) w += 1 + t.monomial.powers().size();
  return w;
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

std::vector<Symbol> Polynomial::symbols() const {
  std::vector<Symbol> out;
  for (const Term& t : terms_)
    for (const Power& p : t.monomial.powers()) out.push_back(p.symbol);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Polynomial::contains(Symbol s) const {
  for (const Term& t : terms_)
    if (t.monomial.contains(s)) return true;
  return false;
}

std::uint32_t Polynomial::degree_in(Symbol s) const {
  std::uint32_t d = 0;
  for (const Term& t : terms_) d = std::max(d, t.monomial.exponent(s));
  return d;
}

std::vector<Polynomial> Polynomial::coefficients_in(Symbol s) const {
  std::vector<Polynomial> out(degree_in(s) + 1);
  // Dividing every term of one bucket by the same power keeps the order.
  for (const Term& t : terms_) {
    std::uint32_t e = t.monomial.exponent(s);
    out[e].terms_.push_back({t.monomial.without(s), t.coefficient});
  }
  return out;
}

Polynomial Polynomial::from_coefficients(Symbol s, std::span<const Polynomial> c) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < c.size(); ++k)
    for (const Term& t : c[k].terms_)
      terms.push_back({t.monomial * Monomial::of(s, static_cast<std::uint32_t>(k)), t.coefficient});
  return from_terms(std::move(terms));
}

std::vector<Polynomial> Polynomial::coefficients_over(std::span<const Symbol> main) const {
  std::vector<std::pair<Monomial, Polynomial>> buckets;
  for (const Term& t : terms_) {
    std::vector<Power> key_powers, rest_powers;
    for (const Power& p : t.monomial.powers()) {
      if (std::find(main.begin(), main.end(), p.symbol) != main.end())
        key_powers.push_back(p);
      else
        rest_powers.push_back(p);
    }
    Monomial key = Monomial::from_powers(std::move(key_powers));
    auto it = std::find_if(buckets.begin(), buckets.end(),
                           [&](const auto& b) { return b.first == key; });
    if (it == buckets.end()) {
      buckets.emplace_back(key, Polynomial());
      it = std::prev(buckets.end());
    }
    it->second.terms_.push_back({Monomial::from_powers(std::move(rest_powers)), t.coefficient});
  }
  std::sort(buckets.begin(), buckets.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) > 0; });
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(std::move(b.second));
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (Term& t : p.terms_) t.coefficient = -t.coefficient;
  return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial p;
  p.terms_ = merge(a.terms_, b.terms_, false);
  return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial p;
  p.terms_ = merge(a.terms_, b.terms_, true);
  return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  if (a.is_monomial()) return b.times(a.terms_[0].monomial).scaled(a.terms_[0].coefficient);
  if (b.is_monomial()) return a.times(b.terms_[0].monomial).scaled(b.terms_[0].coefficient);
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const Term& s : a.terms_)
    for (const Term& t : b.terms_) terms.push_back({s.monomial * t.monomial, s.coefficient * t.coefficient});
  return Polynomial::from_terms(std::move(terms));
}

Polynomial Polynomial::scaled(const Rational& c_in) const {
  if (sgn(c_in) == 0) return Polynomial();
  Rational c = c_in;
  c.canonicalize();
  Polynomial p = *this;
  if (c != 1)
    for (Term& t : p.terms_) t.coefficient *= c;
  return p;
}

Polynomial Polynomial::times(const Monomial& m) const {
  Polynomial p = *this;
  if (!m.is_one())
    for (Term& t : p.terms_) t.monomial = t.monomial * m;
  return p;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(1), base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return Polynomial();
  if (divisor.is_constant()) return scaled(1 / divisor.terms_[0].coefficient);
  const Term& lead = divisor.terms_[0];
  if (divisor.is_monomial()) {
    Polynomial q;
    q.terms_.reserve(terms_.size());
    for (const Term& t : terms_) {
      auto m = t.monomial.divide(lead.monomial);
      if (!m) return std::nullopt;
      q.terms_.push_back({std::move(*m), t.coefficient / lead.coefficient});
    }
    return q;
  }
  if (total_degree() < divisor.total_degree()) return std::nullopt;
  std::vector<Term> quotient;
  std::vector<Term> rest = terms_;
  std::span<const Term> tail(divisor.terms_.begin() + 1, divisor.terms_.end());
  while (!rest.empty()) {
    auto m = rest.front().monomial.divide(lead.monomial);
    if (!m) return std::nullopt;
    Rational c = rest.front().coefficient / lead.coefficient;
    std::vector<Term> scaled_tail;
    scaled_tail.reserve(tail.size());
    for (const Term& t : tail) scaled_tail.push_back({t.monomial * *m, t.coefficient * c});
    rest = merge(std::span<const Term>(rest).subspan(1), scaled_tail, true);
    quotient.push_back({std::move(*m), std::move(c)});
  }
  Polynomial q;
  q.terms_ = std::move(quotient);
  return q;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  Polynomial q;
  q.terms_.reserve(terms_.size());
  for (const Term& t : terms_) {
    auto r = t.monomial.divide(m);
    if (!r) throw std::logic_error("monomial does not divide polynomial");
    q.terms_.push_back({std::move(*r), t.coefficient});
  }
  return q;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / terms_[0].coefficient);
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_[0].monomial;
  for (std::size_t k = 1; k < terms_.size() && !g.is_one(); ++k)
    g = Monomial::gcd(g, terms_[k].monomial);
  return g;
}

Polynomial Polynomial::derivative(Symbol s) const {
  std::vector<Term> terms;
  for (const Term& t : terms_) {
    std::uint32_t e = t.monomial.exponent(s);
    if (e == 0) continue;
    terms.push_back({t.monomial.with_exponent(s, e - 1), t.coefficient * e});
  }
  return from_terms(std::move(terms));
}

Rational Polynomial::evaluate(const std::function<Rational(Symbol)>& value) const {
  Rational total = 0;
  std::map<Symbol, Rational> cache;
  for (const Term& t : terms_) {
    Rational product = t.coefficient;
    for (const Power& p : t.monomial.powers()) {
      auto it = cache.find(p.symbol);
      if (it == cache.end()) it = cache.emplace(p.symbol, value(p.symbol)).first;
      for (std::uint32_t k = 0; k < p.exponent; ++k) product *= it->second;
    }
    total += product;
  }
  return total;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if (!(terms_[k].monomial == other.terms_[k].monomial) ||
        terms_[k].coefficient != other.terms_[k].coefficient)
      return false;
  return true;
}

}  // namespace cartan
