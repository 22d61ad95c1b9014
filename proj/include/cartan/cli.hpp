#pragma once

#include <map>
#include <string>
#include <string_view>

#include "cartan/expression.hpp"

namespace cartan {

/// Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := ('+' | '-') factor | atom ('^' integer)?
///   atom   := integer | name | '(' expr ')'
/// Juxtaposition is an error. Throws ParseError with a 0-based offset.
ExprTree parse_tree(std::string_view text);

/// parse_tree followed by normalize; also throws UnknownName.
Expression parse_expression(std::string_view text, const ChartPtr& chart);

enum class OutputFormat { Text, Json, Latex };

struct Command {
  /// check-flat, invariants, syzygies, structure, painleve, pullback, swell-demo
  std::string name;
  /// ode2, odesys or pdesys (check-flat only).
  std::string problem = "ode2";
  /// Raw expressions keyed by flag name without dashes (f, F1, eta, ...).
  std::map<std::string, std::string> inputs;
  OutputFormat format = OutputFormat::Text;
  /// Absorption/prolongation passes for `structure`; 0 shows the lifted
  /// structure equations before absorption.
  int max_prolong = 1;
};

struct Outcome {
  int exit_code = 0;  // 0 success, 2 parse error, 3 domain error
  std::string output;
  std::string error;
};

Outcome run(const Command& command);

}  // namespace cartan
