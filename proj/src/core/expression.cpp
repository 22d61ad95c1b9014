#include "cartan/expression.hpp"

#include <map>

#include "cartan/error.hpp"

namespace cartan {
namespace {

void require_same(const ChartPtr& a, const ChartPtr& b) {
  if (!same_chart(a, b)) throw ChartMismatch();
}

// Chart of a binary operation; a detached zero adopts the other chart.
const ChartPtr& pick(const Expression& a, const Expression& b) {
  if (!a.chart()) return b.chart();
  if (!b.chart()) return a.chart();
  require_same(a.chart(), b.chart());
  return a.chart();
}

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_one()) return a;
  auto q = a.divide_exact(b);
  if (!q) throw std::logic_error("inexact division while normalizing");
  return std::move(*q);
}

Polynomial poly_partial(const Polynomial& p, const Chart& chart, std::size_t variable) {
  std::vector<Term> out;
  for (const Term& t : p.terms()) {
    for (const Power& pw : t.monomial.powers()) {
      SymbolDerivative d = chart.differentiate(pw.symbol, variable);
      if (d.kind == SymbolDerivative::Kind::Zero) continue;
      Monomial m = t.monomial.with_exponent(pw.symbol, pw.exponent - 1);
      if (d.kind == SymbolDerivative::Kind::Symbol) m = m * Monomial::of(d.symbol);
      out.push_back({std::move(m), t.coefficient * pw.exponent});
    }
  }
  return Polynomial::from_terms(std::move(out));
}

}  // namespace

Expression::Expression(ChartPtr chart, const Rational& value)
    : chart_(std::move(chart)), num_(value) {}

Expression::Expression(ChartPtr chart, const Polynomial& numerator,
                       const Polynomial& denominator)
    : chart_(std::move(chart)) {
  if (denominator.is_zero()) throw DivisionByZero();
  if (numerator.is_zero()) return;
  Polynomial g = gcd(numerator, denominator);
  Polynomial n = exact(numerator, g), d = exact(denominator, g);
  Rational lc = d.leading_term().coefficient;
  if (lc != 1) {
    Rational inv = 1 / lc;
    n = n.scaled(inv);
    d = d.scaled(inv);
  }
  num_ = std::move(n);
  den_ = std::move(d);
}

Expression Expression::from_coprime(ChartPtr chart, Polynomial num, Polynomial den) {
  Expression e;
  e.chart_ = std::move(chart);
  if (num.is_zero()) return e;
  Rational lc = den.leading_term().coefficient;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  return e;
}

Expression Expression::polynomial(ChartPtr chart, Polynomial p) {
  return from_coprime(std::move(chart), std::move(p), Polynomial(1));
}

Expression Expression::variable(const ChartPtr& chart, std::string_view name) {
  return symbol(chart, Chart::variable_symbol(chart->index_of(name)));
}

Expression Expression::symbol(const ChartPtr& chart, Symbol s) {
  return polynomial(chart, Polynomial::symbol(s));
}

Expression Expression::named(const ChartPtr& chart, std::string_view name) {
  auto s = chart->lookup(name);
  if (!s) throw UnknownName(std::string(name));
  return symbol(chart, *s);
}

Rational Expression::constant_value() const {
  if (!is_constant()) throw std::logic_error("expression is not constant");
  return num_.is_zero() ? Rational(0) : num_.constant_value();
}

std::vector<Symbol> Expression::symbols() const {
  std::vector<Symbol> a = num_.symbols(), b = den_.symbols(), out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Expression Expression::operator-() const { return from_coprime(chart_, -num_, den_); }

Expression operator+(const Expression& a, const Expression& b) {
  const ChartPtr& chart = pick(a, b);
  if (a.is_zero()) return Expression::from_coprime(chart, b.num_, b.den_);
  if (b.is_zero()) return Expression::from_coprime(chart, a.num_, a.den_);
  if (a.den_.is_one() && b.den_.is_one()) return Expression::from_coprime(chart, a.num_ + b.num_, a.den_);
  if (a.den_ == b.den_) return Expression(chart, a.num_ + b.num_, a.den_);
  Polynomial g = gcd(a.den_, b.den_);
  if (g.is_one())
    return Expression::from_coprime(chart, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  Polynomial a1 = exact(a.den_, g), b1 = exact(b.den_, g);
  Polynomial num = a.num_ * b1 + b.num_ * a1;
  if (num.is_zero()) return Expression(chart, 0);
  Polynomial h = gcd(num, g);
  return Expression::from_coprime(chart, exact(num, h), a1 * exact(b.den_, h));
}

Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

Expression operator*(const Expression& a, const Expression& b) {
  const ChartPtr& chart = pick(a, b);
  if (a.is_zero() || b.is_zero()) return Expression(chart, 0);
  if (a.den_.is_one() && b.den_.is_one()) return Expression::from_coprime(chart, a.num_ * b.num_, a.den_);
  Polynomial g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  return Expression::from_coprime(chart, exact(a.num_, g1) * exact(b.num_, g2),
                         exact(a.den_, g2) * exact(b.den_, g1));
}

Expression operator/(const Expression& a, const Expression& b) {
  if (b.is_zero()) throw DivisionByZero();
  return a * b.pow(-1);
}

Expression operator*(const Expression& a, const Rational& c) {
  if (c == 0) return Expression(a.chart_, 0);
  return Expression::from_coprime(a.chart_, a.num_.scaled(c), a.den_);
}

Expression operator/(const Expression& a, const Rational& c) {
  if (c == 0) throw DivisionByZero();
  return a * Rational(1 / c);
}

Expression operator+(const Expression& a, const Rational& c) {
  return a + Expression(a.chart_, c);
}

Expression operator-(const Expression& a, const Rational& c) {
  return a + Expression(a.chart_, Rational(-c));
}

Expression Expression::pow(int n) const {
  if (n < 0) {
    if (is_zero()) throw DivisionByZero();
    Expression inv = from_coprime(chart_, den_, num_);
    return n == -1 ? inv : inv.pow(-n);
  }
  if (n == 0) return Expression(chart_, 1);
  if (n == 1) return *this;
  return from_coprime(chart_, num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

Rational Expression::evaluate(const std::function<Rational(Symbol)>& value) const {
  Rational d = den_.evaluate(value);
  if (d == 0) throw DivisionByZero();
  return num_.evaluate(value) / d;
}

bool Expression::operator==(const Expression& other) const {
  if (chart_ && other.chart_ && !same_chart(chart_, other.chart_)) return false;
  return num_ == other.num_ && den_ == other.den_;
}

bool is_zero(const Expression& e) { return e.is_zero(); }

Expression partial(const Expression& e, std::size_t variable) {
  const ChartPtr& chart = e.chart();
  if (!chart || e.is_constant()) return Expression(chart, 0);
  if (variable >= chart->dimension()) throw UnknownName("#" + std::to_string(variable));
  const Polynomial& n = e.numerator();
  const Polynomial& d = e.denominator();
  Polynomial dn = poly_partial(n, *chart, variable);
  if (d.is_constant()) return Expression::polynomial(chart, dn.scaled(1 / d.constant_value()));
  Polynomial dd = poly_partial(d, *chart, variable);
  if (dd.is_zero()) return Expression(chart, dn, d);
  // With g = gcd(d, d'), the result (n' d1 - n e1) / (g d1^2) can only
  // share factors with g.
  Polynomial g = gcd(d, dd);
  Polynomial d1 = exact(d, g), e1 = exact(dd, g);
  Polynomial num = dn * d1 - n * e1;
  if (num.is_zero()) return Expression(chart, 0);
  Polynomial den = d * d1;
  if (!g.is_one()) {
    Polynomial h = gcd(num, g);
    num = exact(num, h);
    den = exact(den, h);
  }
  return Expression::from_coprime(chart, std::move(num), std::move(den));
}

Expression partial(const Expression& e, std::string_view variable) {
  return partial(e, e.chart()->index_of(variable));
}

Derivation::Derivation(ChartPtr chart) : chart_(std::move(chart)) {
  components_.assign(chart_->dimension(), Expression(chart_, 0));
}

Derivation::Derivation(ChartPtr chart, std::vector<Expression> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_->dimension())
    throw DomainError("derivation needs one component per chart variable");
  for (const Expression& c : components_)
    if (c.chart()) require_same(c.chart(), chart_);
}

Derivation Derivation::coordinate(const ChartPtr& chart, std::string_view name) {
  Derivation d(chart);
  d.set(name, Expression(chart, 1));
  return d;
}

Derivation& Derivation::set(std::string_view name, Expression value) {
  return set(chart_->index_of(name), std::move(value));
}

Derivation& Derivation::set(std::size_t variable, Expression value) {
  if (value.chart()) require_same(value.chart(), chart_);
  components_.at(variable) = std::move(value);
  return *this;
}

Expression Derivation::operator()(const Expression& e) const {
  if (e.chart()) require_same(e.chart(), chart_);
  Expression out(chart_, 0);
  for (std::size_t v = 0; v < components_.size(); ++v) {
    if (components_[v].is_zero()) continue;
    Expression dv = partial(e, v);
    if (!dv.is_zero()) out += components_[v] * dv;
  }
  return out;
}

Expression total_derivative(const Derivation& d, const Expression& e) { return d(e); }

namespace {

// Image of a polynomial under a symbol map, over a common denominator.
std::pair<Polynomial, Polynomial> image_of(
    const Polynomial& p, const std::function<const Expression&(Symbol)>& image) {
  std::map<Symbol, std::uint32_t> top;
  for (const Term& t : p.terms())
    for (const Power& pw : t.monomial.powers()) {
      auto& e = top[pw.symbol];
      e = std::max(e, pw.exponent);
    }
  Polynomial common(1);
  std::map<Symbol, std::vector<Polynomial>> num_pows, den_pows;
  auto power = [](std::vector<Polynomial>& cache, const Polynomial& base, std::uint32_t k) {
    if (cache.empty()) cache.push_back(Polynomial(1));
    while (cache.size() <= k) cache.push_back(cache.back() * base);
    return cache[k];
  };
  for (auto [s, e] : top) {
    const Expression& img = image(s);
    if (!img.denominator().is_one()) common *= img.denominator().pow(e);
  }
  std::vector<Polynomial> parts;
  Polynomial sum;
  for (const Term& t : p.terms()) {
    Polynomial term(t.coefficient);
    for (auto& [s, e] : top) {
      const Expression& img = image(s);
      std::uint32_t k = t.monomial.exponent(s);
      if (k > 0) term *= power(num_pows[s], img.numerator(), k);
      if (!img.denominator().is_one() && k < e)
        term *= power(den_pows[s], img.denominator(), e - k);
    }
    sum += term;
  }
  return {std::move(sum), std::move(common)};
}

}  // namespace

Expression compose(const Expression& e, const ChartPtr& target,
                   const std::function<Expression(Symbol)>& image) {
  std::map<Symbol, Expression> cache;
  for (Symbol s : e.symbols()) {
    Expression img = image(s);
    if (img.chart()) require_same(img.chart(), target);
    cache.emplace(s, std::move(img));
  }
  auto lookup = [&](Symbol s) -> const Expression& { return cache.at(s); };
  auto [nn, nd] = image_of(e.numerator(), lookup);
  if (nn.is_zero()) return Expression(target, 0);
  if (e.denominator().is_one()) return Expression(target, nn, nd);
  auto [dn, dd] = image_of(e.denominator(), lookup);
  if (dn.is_zero()) throw DivisionByZero();
  return Expression(target, nn, nd) * Expression(target, dd, dn);
}

Expression substitute(const Expression& e,
                      const std::vector<std::pair<std::string, Expression>>& bindings) {
  const ChartPtr& chart = e.chart();
  std::map<std::size_t, const Expression*> bound;
  for (const auto& [name, value] : bindings) {
    auto k = chart->function_index(name);
    if (!k) throw UnknownName(name);
    if (value.chart()) require_same(value.chart(), chart);
    const auto& args = chart->function(*k).arguments;
    for (Symbol s : value.symbols())
      for (std::size_t dep : chart->dependencies(s))
        if (std::find(args.begin(), args.end(), dep) == args.end())
          throw ArgumentEscape(name + " may not depend on " + chart->variable_name(dep));
    bound[*k] = &value;
  }
  std::map<Symbol, Expression> memo;
  std::function<Expression(Symbol)> image = [&](Symbol s) -> Expression {
    if (s.is_variable() || !bound.count(s.index())) return Expression::symbol(chart, s);
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    Expression out;
    if (s.total_order() == 0) {
      out = *bound.at(s.index());
    } else {
      // Peel one derivative off the last differentiated slot.
      const auto& args = chart->function(s.index()).arguments;
      Symbol::Orders orders = s.orders();
      std::size_t slot = args.size();
      while (orders[slot - 1] == 0) --slot;
      orders[slot - 1]--;
      out = partial(image(Symbol::function(s.index(), orders)), args[slot - 1]);
    }
    memo.emplace(s, out);
    return out;
  };
  return compose(e, chart, image);
}

Expression rebase(const Expression& e, const ChartPtr& target) {
  const ChartPtr& source = e.chart();
  if (same_chart(source, target)) return e;
  return compose(e, target, [&](Symbol s) {
    if (s.is_variable()) return Expression::variable(target, source->variable_name(s.index()));
    const OpaqueFunction& fn = source->function(s.index());
    auto k = target->function_index(fn.name);
    if (!k) throw UnknownName(fn.name);
    const OpaqueFunction& tf = target->function(*k);
    Symbol::Orders orders{};
    for (std::size_t a = 0; a < fn.arguments.size(); ++a) {
      if (s.order(a) == 0) continue;
      const std::string& arg = source->variable_name(fn.arguments[a]);
      std::size_t slot = tf.arguments.size();
      for (std::size_t b = 0; b < tf.arguments.size(); ++b)
        if (target->variable_name(tf.arguments[b]) == arg) slot = b;
      if (slot == tf.arguments.size()) throw ChartMismatch();
      orders[slot] = s.order(a);
    }
    return Expression::symbol(target, Symbol::function(static_cast<std::uint16_t>(*k), orders));
  });
}

Expression normalize(const ExprTree& tree, const ChartPtr& chart) {
  using K = ExprTree::Kind;
  switch (tree.kind) {
    case K::Number:
      return Expression(chart, tree.number);
    case K::Name:
      return Expression::named(chart, tree.name);
    case K::Neg:
      return -normalize(tree.children.at(0), chart);
    case K::Pow:
      return normalize(tree.children.at(0), chart).pow(static_cast<int>(tree.exponent));
    default:
      break;
  }
  Expression a = normalize(tree.children.at(0), chart);
  Expression b = normalize(tree.children.at(1), chart);
  switch (tree.kind) {
    case K::Add:
      return a + b;
    case K::Sub:
      return a - b;
    case K::Mul:
      return a * b;
    default:
      return a / b;
  }
}

}  // namespace cartan
