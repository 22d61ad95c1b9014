#include "cartan/chart.hpp"

#include <algorithm>
#include <set>

#include "cartan/error.hpp"

namespace cartan {

ChartPtr Chart::make(const ChartSpec& spec) {
  std::shared_ptr<Chart> chart(new Chart());
  chart->spec_ = spec;
  chart->notation_ = spec.notation;
  chart->names_ = spec.coordinates;
  chart->names_.insert(chart->names_.end(), spec.parameters.begin(), spec.parameters.end());
  chart->coordinate_count_ = spec.coordinates.size();
  if (chart->names_.size() > 32) throw DomainError("charts support at most 32 variables");

  std::set<std::string> seen;
  auto claim = [&](const std::string& name) {
    if (name.empty() || !seen.insert(name).second)
      throw DomainError("duplicate or empty chart name '" + name + "'");
  };
  for (const auto& n : chart->names_) claim(n);
  for (const auto& f : spec.functions) {
    claim(f.name);
    if (f.name.find('_') != std::string::npos)
      throw DomainError("function names may not contain '_': " + f.name);
    if (f.arguments.size() > Symbol::kMaxArity)
      throw DomainError("function '" + f.name + "' has too many arguments");
    OpaqueFunction fn{f.name, {}};
    for (const auto& arg : f.arguments) {
      auto idx = chart->variable_index(arg);
      if (!idx || chart->is_parameter(*idx))
        throw UnknownName(arg);
      fn.arguments.push_back(*idx);
    }
    chart->functions_.push_back(std::move(fn));
  }
  for (std::size_t p = chart->coordinate_count_; p < chart->names_.size(); ++p)
    chart->nonvanishing_.push_back(variable_symbol(p));
  for (const auto& name : spec.nonvanishing) {
    auto s = chart->lookup(name);
    if (!s) throw UnknownName(name);
    chart->nonvanishing_.push_back(*s);
  }
  std::sort(chart->nonvanishing_.begin(), chart->nonvanishing_.end());
  return chart;
}

std::optional<std::size_t> Chart::variable_index(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return k;
  return std::nullopt;
}

std::size_t Chart::index_of(std::string_view name) const {
  auto idx = variable_index(name);
  if (!idx) throw UnknownName(std::string(name));
  return *idx;
}

std::optional<std::size_t> Chart::function_index(std::string_view name) const {
  for (std::size_t k = 0; k < functions_.size(); ++k)
    if (functions_[k].name == name) return k;
  return std::nullopt;
}

std::optional<Symbol> Chart::lookup(std::string_view name) const {
  if (auto v = variable_index(name)) return variable_symbol(*v);
  if (auto f = function_index(name)) return function_symbol(*f);
  auto cut = name.find('_');
  if (cut == std::string_view::npos) return std::nullopt;
  auto f = function_index(name.substr(0, cut));
  if (!f) return std::nullopt;
  const OpaqueFunction& fn = functions_[*f];
  std::string_view suffix = name.substr(cut + 1);
  if (suffix.empty()) return std::nullopt;

  Symbol::Orders orders{};
  auto bump = [&](std::size_t var) {
    auto it = std::find(fn.arguments.begin(), fn.arguments.end(), var);
    if (it == fn.arguments.end()) return false;
    orders[static_cast<std::size_t>(it - fn.arguments.begin())]++;
    return true;
  };
  if (suffix.find('_') != std::string_view::npos) {
    // Underscore-separated argument names, used when names are long.
    std::size_t start = 0;
    while (start <= suffix.size()) {
      std::size_t end = suffix.find('_', start);
      if (end == std::string_view::npos) end = suffix.size();
      auto var = variable_index(suffix.substr(start, end - start));
      if (!var || !bump(*var)) return std::nullopt;
      start = end + 1;
    }
  } else {
    // Concatenated argument names; longest match first.
    std::size_t pos = 0;
    while (pos < suffix.size()) {
      std::size_t best = 0, best_var = 0;
      for (std::size_t var : fn.arguments) {
        const std::string& n = names_[var];
        if (n.size() > best && suffix.substr(pos, n.size()) == n) {
          best = n.size();
          best_var = var;
        }
      }
      if (best == 0) return std::nullopt;
      bump(best_var);
      pos += best;
    }
  }
  return Symbol::function(static_cast<std::uint16_t>(*f), orders);
}

std::string Chart::symbol_name(Symbol s) const {
  if (s.is_variable()) return names_.at(s.index());
  const OpaqueFunction& fn = functions_.at(s.index());
  if (s.total_order() == 0) return fn.name;
  bool long_names = std::any_of(fn.arguments.begin(), fn.arguments.end(),
                                [&](std::size_t v) { return names_[v].size() > 1; });
  std::string out;
  if (notation_ == DerivativeNotation::Operator) {
    for (std::size_t a = 0; a < fn.arguments.size(); ++a)
      for (unsigned k = 0; k < s.order(a); ++k) out += names_[fn.arguments[a]];
    return out + "(" + fn.name + ")";
  }
  out = fn.name + "_";
  bool first = true;
  for (std::size_t a = 0; a < fn.arguments.size(); ++a)
    for (unsigned k = 0; k < s.order(a); ++k) {
      if (long_names && !first) out += "_";
      out += names_[fn.arguments[a]];
      first = false;
    }
  return out;
}

namespace {

// "a3" -> "a_{3}", "theta1" -> "\theta^{1}" is left to callers; only
// trailing digits become a subscript here.
std::string latex_name(const std::string& name) {
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  if (cut == 0 || cut == name.size()) return name;
  return name.substr(0, cut) + "_{" + name.substr(cut) + "}";
}

}  // namespace

std::string Chart::symbol_latex(Symbol s) const {
  if (s.is_variable()) return latex_name(names_.at(s.index()));
  const OpaqueFunction& fn = functions_.at(s.index());
  std::string base = latex_name(fn.name);
  if (s.total_order() == 0) return base;
  std::string sub;
  for (std::size_t a = 0; a < fn.arguments.size(); ++a)
    for (unsigned k = 0; k < s.order(a); ++k) sub += names_[fn.arguments[a]];
  if (notation_ == DerivativeNotation::Operator) return sub + "(" + base + ")";
  return "{" + base + "}_{" + sub + "}";
}

SymbolDerivative Chart::differentiate(Symbol s, std::size_t variable) const {
  if (s.is_variable())
    return s.index() == variable ? SymbolDerivative{SymbolDerivative::Kind::One, {}}
                                 : SymbolDerivative{};
  const OpaqueFunction& fn = functions_.at(s.index());
  auto it = std::find(fn.arguments.begin(), fn.arguments.end(), variable);
  if (it == fn.arguments.end()) return {};
  return {SymbolDerivative::Kind::Symbol,
          s.differentiated(static_cast<std::size_t>(it - fn.arguments.begin()))};
}

std::vector<std::size_t> Chart::dependencies(Symbol s) const {
  if (s.is_variable()) return {s.index()};
  return functions_.at(s.index()).arguments;
}

bool Chart::is_nonvanishing(Symbol s) const {
  return std::binary_search(nonvanishing_.begin(), nonvanishing_.end(), s);
}

bool Chart::same_as(const Chart& other) const {
  if (this == &other) return true;
  if (names_ != other.names_ || coordinate_count_ != other.coordinate_count_) return false;
  if (functions_.size() != other.functions_.size()) return false;
  for (std::size_t k = 0; k < functions_.size(); ++k)
    if (functions_[k].name != other.functions_[k].name ||
        functions_[k].arguments != other.functions_[k].arguments)
      return false;
  return true;
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

}  // namespace cartan
