#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cartan/chart.hpp"
#include "cartan/polynomial.hpp"

namespace cartan {

/// Exact scalar over a chart, kept in canonical rational form.
///
/// The value is numerator/denominator with gcd(numerator, denominator) = 1
/// and a denominator whose leading coefficient is one. Zero is 0/1. Two
/// expressions are equal iff their representations are identical, so
/// `is_zero` and `==` decide equality of rational functions.
class Expression {
 public:
  Expression() = default;  // detached zero; only useful as a placeholder
  Expression(ChartPtr chart, const Rational& value);
  Expression(ChartPtr chart, long value) : Expression(std::move(chart), Rational(value)) {}
  /// Normalizes numerator/denominator; throws DivisionByZero.
  Expression(ChartPtr chart, const Polynomial& numerator, const Polynomial& denominator);
  static Expression polynomial(ChartPtr chart, Polynomial p);
  /// Skips the gcd; the caller guarantees the operands are coprime.
  static Expression from_coprime(ChartPtr chart, Polynomial num, Polynomial den);

  static Expression variable(const ChartPtr& chart, std::string_view name);
  static Expression symbol(const ChartPtr& chart, Symbol s);
  /// Variable, function or spelled derivative symbol ("f_xp").
  static Expression named(const ChartPtr& chart, std::string_view name);

  const ChartPtr& chart() const { return chart_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }
  Rational constant_value() const;
  std::size_t weight() const { return num_.weight() + den_.weight(); }
  std::vector<Symbol> symbols() const;
  bool depends_on(Symbol s) const { return num_.contains(s) || den_.contains(s); }

  Expression operator-() const;
  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Rational& c);
  friend Expression operator*(const Rational& c, const Expression& a) { return a * c; }
  friend Expression operator/(const Expression& a, const Rational& c);
  friend Expression operator+(const Expression& a, const Rational& c);
  friend Expression operator-(const Expression& a, const Rational& c);
  Expression& operator+=(const Expression& b) { return *this = *this + b; }
  Expression& operator-=(const Expression& b) { return *this = *this - b; }
  Expression& operator*=(const Expression& b) { return *this = *this * b; }
  Expression& operator/=(const Expression& b) { return *this = *this / b; }
  Expression pow(int n) const;

  /// Value at a point; throws DivisionByZero when the denominator vanishes.
  Rational evaluate(const std::function<Rational(Symbol)>& value) const;

  bool operator==(const Expression& other) const;

 private:
  ChartPtr chart_;
  Polynomial num_;
  Polynomial den_{Rational(1)};
};

bool is_zero(const Expression& e);

/// Partial derivative by a chart variable, applying the chain rule to
/// opaque-function symbols. Throws UnknownName for a bad name.
Expression partial(const Expression& e, std::size_t variable);
Expression partial(const Expression& e, std::string_view variable);

/// First-order operator sum_v component[v] * d/dv over the chart variables.
/// Used both for total derivatives (D_x, D_t) and for frame derivations.
class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(ChartPtr chart);
  Derivation(ChartPtr chart, std::vector<Expression> components);
  /// Coordinate vector field d/d(name).
  static Derivation coordinate(const ChartPtr& chart, std::string_view name);

  const ChartPtr& chart() const { return chart_; }
  const Expression& component(std::size_t variable) const { return components_.at(variable); }
  const std::vector<Expression>& components() const { return components_; }
  Derivation& set(std::string_view name, Expression value);
  Derivation& set(std::size_t variable, Expression value);

  Expression operator()(const Expression& e) const;

 private:
  ChartPtr chart_;
  std::vector<Expression> components_;
};

/// Applies D to e; throws ChartMismatch when they live on different charts.
Expression total_derivative(const Derivation& d, const Expression& e);

/// Replaces opaque functions by concrete expressions: every derivative symbol
/// f_I becomes the honest partial derivative of the bound expression.
/// Throws ArgumentEscape when a binding depends on non-arguments of f.
Expression substitute(const Expression& e,
                      const std::vector<std::pair<std::string, Expression>>& bindings);

/// Replaces every symbol by its image on `target` (a ring homomorphism).
Expression compose(const Expression& e, const ChartPtr& target,
                   const std::function<Expression(Symbol)>& image);

/// Moves an expression to a chart that declares the same names.
Expression rebase(const Expression& e, const ChartPtr& target);

/// Unnormalized syntax tree, as produced by the parser.
struct ExprTree {
  enum class Kind { Number, Name, Add, Sub, Mul, Div, Pow, Neg };
  Kind kind = Kind::Number;
  Rational number;
  std::string name;
  unsigned exponent = 0;
  std::size_t position = 0;
  std::vector<ExprTree> children;
};

/// Canonical form of a tree. Throws UnknownName or DivisionByZero.
Expression normalize(const ExprTree& tree, const ChartPtr& chart);

}  // namespace cartan
