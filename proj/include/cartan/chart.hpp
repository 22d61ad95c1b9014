#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/polynomial.hpp"

namespace cartan {

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// An unknown function of some of the chart coordinates (f, eta, F1, ...).
struct OpaqueFunction {
  std::string name;
  std::vector<std::size_t> arguments;  // coordinate indices, in declared order
};

/// How derivative symbols of opaque functions are spelled.
enum class DerivativeNotation {
  Subscript,  // f_xp
  Operator,   // X1(I1): first-order frame derivatives of abstract invariants
};

/// Declaration used to build a Chart.
struct ChartSpec {
  std::vector<std::string> coordinates;
  /// Group parameters; each is assumed nonvanishing.
  std::vector<std::string> parameters;
  struct Function {
    std::string name;
    std::vector<std::string> arguments;
  };
  std::vector<Function> functions;
  /// Names of derivative symbols assumed nonvanishing (e.g. "eta_y").
  std::vector<std::string> nonvanishing;
  DerivativeNotation notation = DerivativeNotation::Subscript;
};

/// Outcome of differentiating a single symbol by a chart variable.
struct SymbolDerivative {
  enum class Kind { Zero, One, Symbol } kind = Kind::Zero;
  cartan::Symbol symbol{};
};

/// Coordinate system of a computation: ordered variables (coordinates
/// followed by group parameters) and the opaque functions living on them.
///
/// Charts are immutable and shared; all expressions of one computation point
/// at the same chart.
class Chart {
 public:
  static ChartPtr make(const ChartSpec& spec);

  /// Number of differentiable variables (coordinates plus parameters).
  std::size_t dimension() const { return names_.size(); }
  std::size_t coordinate_count() const { return coordinate_count_; }
  std::size_t parameter_count() const { return names_.size() - coordinate_count_; }
  bool is_parameter(std::size_t variable) const { return variable >= coordinate_count_; }
  const std::string& variable_name(std::size_t variable) const { return names_.at(variable); }
  std::optional<std::size_t> variable_index(std::string_view name) const;
  /// Index of a variable by name; throws UnknownName.
  std::size_t index_of(std::string_view name) const;

  std::size_t function_count() const { return functions_.size(); }
  const OpaqueFunction& function(std::size_t k) const { return functions_.at(k); }
  std::optional<std::size_t> function_index(std::string_view name) const;

  static Symbol variable_symbol(std::size_t variable) {
    return Symbol::variable(static_cast<std::uint16_t>(variable));
  }
  static Symbol function_symbol(std::size_t k) {
    return Symbol::function(static_cast<std::uint16_t>(k));
  }
  /// Position of a chart variable in a variable symbol.
  static std::size_t variable_of(Symbol s) { return s.index(); }

  /// Resolves a variable, function or spelled derivative ("f_xp").
  std::optional<Symbol> lookup(std::string_view name) const;
  std::string symbol_name(Symbol s) const;
  std::string symbol_latex(Symbol s) const;

  SymbolDerivative differentiate(Symbol s, std::size_t variable) const;
  /// Chart variables a symbol depends on.
  std::vector<std::size_t> dependencies(Symbol s) const;

  const std::vector<Symbol>& nonvanishing() const { return nonvanishing_; }
  bool is_nonvanishing(Symbol s) const;

  DerivativeNotation notation() const { return notation_; }
  const ChartSpec& spec() const { return spec_; }
  bool same_as(const Chart& other) const;

 private:
  Chart() = default;

  ChartSpec spec_;
  std::vector<std::string> names_;
  std::size_t coordinate_count_ = 0;
  std::vector<OpaqueFunction> functions_;
  std::vector<Symbol> nonvanishing_;
  DerivativeNotation notation_ = DerivativeNotation::Subscript;
};

/// True when both pointers denote the same chart (identical or equal spec).
bool same_chart(const ChartPtr& a, const ChartPtr& b);

}  // namespace cartan
