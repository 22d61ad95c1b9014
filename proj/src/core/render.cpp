#include "cartan/render.hpp"

namespace cartan {
namespace {

std::string monomial_text(const Monomial& m, const Chart& chart) {
  std::string out;
  for (const Power& pw : m.powers()) {
    if (!out.empty()) out += "*";
    out += chart.symbol_name(pw.symbol);
    if (pw.exponent > 1) out += "^" + std::to_string(pw.exponent);
  }
  return out;
}

std::string monomial_latex(const Monomial& m, const Chart& chart) {
  std::string out;
  for (const Power& pw : m.powers()) {
    if (!out.empty()) out += " ";
    out += chart.symbol_latex(pw.symbol);
    if (pw.exponent > 1) out += "^{" + std::to_string(pw.exponent) + "}";
  }
  return out;
}

std::string rational_latex(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

bool needs_parens(const Polynomial& p) {
  if (p.size() > 1) return true;
  const Term& t = p.leading_term();
  return t.coefficient != 1 || t.monomial.powers().size() > 1 ||
         (t.monomial.powers().size() == 1 && t.monomial.powers()[0].exponent > 1);
}

}  // namespace

std::string to_text(const Polynomial& p, const Chart& chart) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : p.terms()) {
    Rational c = t.coefficient;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    if (t.monomial.is_one()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += monomial_text(t.monomial, chart);
    }
    first = false;
  }
  return out;
}

std::string to_text(const Expression& e) {
  if (e.is_zero() || !e.chart()) return "0";
  const Chart& chart = *e.chart();
  std::string num = to_text(e.numerator(), chart);
  if (e.denominator().is_one()) return num;
  if (e.numerator().size() > 1) num = "(" + num + ")";
  std::string den = to_text(e.denominator(), chart);
  if (needs_parens(e.denominator())) den = "(" + den + ")";
  return num + "/" + den;
}

std::string to_latex(const Polynomial& p, const Chart& chart) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : p.terms()) {
    Rational c = t.coefficient;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = abs(c);
    if (t.monomial.is_one()) {
      out += rational_latex(c);
    } else {
      if (c != 1) out += rational_latex(c) + " ";
      out += monomial_latex(t.monomial, chart);
    }
    first = false;
  }
  return out;
}

std::string to_latex(const Expression& e) {
  if (e.is_zero() || !e.chart()) return "0";
  const Chart& chart = *e.chart();
  if (e.denominator().is_one()) return to_latex(e.numerator(), chart);
  return "\\frac{" + to_latex(e.numerator(), chart) + "}{" +
         to_latex(e.denominator(), chart) + "}";
}

std::size_t monomial_count(const Expression& e) { return e.numerator().size(); }

}  // namespace cartan
