#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cartan/error.hpp"
#include "cartan/expression.hpp"

namespace cartan::detail {

// Throws DomainError when e mentions a variable or function outside the
// allowed names, or lives on a different chart.
inline void require_only(const Expression& e, const ChartPtr& chart,
                         const std::vector<std::string>& variables,
                         const std::vector<std::string>& functions, const std::string& what) {
  if (!e.chart()) return;  // detached zero
  if (!same_chart(e.chart(), chart)) throw DomainError(what + " lives on the wrong chart");
  for (Symbol s : e.symbols()) {
    const std::string& name = s.is_variable() ? chart->variable_name(Chart::variable_of(s))
                                              : chart->function(s.index()).name;
    const auto& allowed = s.is_variable() ? variables : functions;
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
      throw DomainError(what + " may not depend on " + name);
  }
}

}  // namespace cartan::detail
