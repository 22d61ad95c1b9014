#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace cartan {

using Rational = mpq_class;

/// An indeterminate of the polynomial ring.
///
/// Symbols are plain values packed into 64 bits so that ordering and hashing
/// need no symbol table. A symbol is either a chart variable (coordinate or
/// group parameter, identified by its position in the chart) or a partial
/// derivative of an opaque function, identified by the function's position
/// and one derivative order per declared argument. Derivative orders are a
/// multi-index, so f_xp and f_px are the same symbol.
///
/// The numeric order of the packed code is the variable order of the
/// polynomial ring: a smaller code is a more significant variable.
class Symbol {
 public:
  static constexpr std::size_t kMaxArity = 6;
  using Orders = std::array<std::uint8_t, kMaxArity>;

  constexpr Symbol() = default;

  static constexpr Symbol variable(std::uint16_t index) {
    return Symbol(std::uint64_t{index} << 48);
  }
  static Symbol function(std::uint16_t index, const Orders& orders = {});

  bool is_function() const { return (code_ >> 63) != 0; }
  bool is_variable() const { return !is_function(); }
  std::uint16_t index() const {
    return static_cast<std::uint16_t>((code_ >> 48) & 0x7fff);
  }
  std::uint8_t order(std::size_t argument) const {
    return static_cast<std::uint8_t>(code_ >> (40 - 8 * argument));
  }
  Orders orders() const;
  unsigned total_order() const;
  /// The symbol differentiated once more by the given argument slot.
  Symbol differentiated(std::size_t argument) const;

  std::uint64_t code() const { return code_; }
  auto operator<=>(const Symbol&) const = default;

 private:
  explicit constexpr Symbol(std::uint64_t code) : code_(code) {}
  std::uint64_t code_ = 0;
};

struct Power {
  Symbol symbol;
  std::uint32_t exponent;
  bool operator==(const Power&) const = default;
};

/// Power product of symbols, kept sorted by symbol.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(Symbol s, std::uint32_t exponent = 1);
  static Monomial from_powers(std::vector<Power> powers);

  std::span<const Power> powers() const { return powers_; }
  unsigned degree() const { return degree_; }
  std::uint32_t exponent(Symbol s) const;
  bool is_one() const { return powers_.empty(); }
  bool contains(Symbol s) const { return exponent(s) != 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  std::optional<Monomial> divide(const Monomial& divisor) const;
  bool divides(const Monomial& other) const;
  /// Componentwise minimum of exponents.
  static Monomial gcd(const Monomial& a, const Monomial& b);
  Monomial without(Symbol s) const;
  Monomial with_exponent(Symbol s, std::uint32_t exponent) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Power> powers_;
  unsigned degree_ = 0;
};

/// Graded lexicographic comparison: positive when a > b.
int compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  Rational coefficient;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are stored in strictly decreasing graded-lex order with nonzero
/// coefficients, so equal polynomials have identical representations.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  explicit Polynomial(long c) : Polynomial(Rational(c)) {}
  static Polynomial symbol(Symbol s, std::uint32_t exponent = 1);
  static Polynomial monomial(Monomial m, Rational c = 1);
  /// Builds a polynomial from arbitrary terms, combining like monomials.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Value of a constant polynomial.
  Rational constant_value() const;

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  /// Rough node count used to rank pivots by expression size.
  std::size_t weight() const;
  const Term& leading_term() const { return terms_.front(); }
  unsigned total_degree() const;

  std::vector<Symbol> symbols() const;
  bool contains(Symbol s) const;
  std::uint32_t degree_in(Symbol s) const;

  /// Dense coefficient list in powers of `s`; entry k multiplies s^k.
  std::vector<Polynomial> coefficients_in(Symbol s) const;
  static Polynomial from_coefficients(Symbol s, std::span<const Polynomial> c);
  /// Coefficients with respect to every symbol in `main` (all other symbols
  /// become coefficient variables).
  std::vector<Polynomial> coefficients_over(std::span<const Symbol> main) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
  Polynomial scaled(const Rational& c) const;
  Polynomial times(const Monomial& m) const;
  Polynomial pow(unsigned n) const;

  /// Quotient when `divisor` divides exactly, nullopt otherwise.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;
  /// Divides by a monomial that is known to divide every term.
  Polynomial divide_monomial(const Monomial& m) const;
  /// Scaled so the leading coefficient is one (zero stays zero).
  Polynomial monic() const;
  /// Largest monomial dividing every term.
  Monomial monomial_content() const;

  /// d/ds treating s as an independent indeterminate.
  Polynomial derivative(Symbol s) const;

  /// Substitutes a rational value for every symbol.
  Rational evaluate(const std::function<Rational(Symbol)>& value) const;

  bool operator==(const Polynomial& other) const;

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor, normalized to leading coefficient one.
/// gcd(0, 0) is 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace cartan
