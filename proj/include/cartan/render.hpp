#pragma once

#include <string>

#include "cartan/expression.hpp"

namespace cartan {

/// Plain text in the input grammar, e.g. "6*y^2 + x" or "-1/2*f_pp/a3".
std::string to_text(const Expression& e);
std::string to_text(const Polynomial& p, const Chart& chart);

/// LaTeX math (no surrounding dollars).
std::string to_latex(const Expression& e);
std::string to_latex(const Polynomial& p, const Chart& chart);

/// Number of numerator monomials, the size measure used in reports.
std::size_t monomial_count(const Expression& e);

}  // namespace cartan
