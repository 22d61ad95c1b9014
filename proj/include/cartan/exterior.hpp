#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "cartan/expression.hpp"
#include "cartan/matrix.hpp"

namespace cartan {

/// Basis k-form as a bit set of basis indices: bit v stands for the v-th
/// basis 1-form, and the product is taken in increasing index order.
using FormKey = std::uint32_t;

FormKey key_of(const std::vector<std::size_t>& indices);
std::vector<std::size_t> indices_of(FormKey key);

/// Alternating k-form sum c_I dx_I over the differentials of a chart's
/// variables, with basis elements dx_{i1}^...^dx_{ik}, i1 < ... < ik.
///
/// The same container also stores forms written in an abstract coframe
/// (theta^1, theta^2, ...) when the chart is only used for bookkeeping.
class DifferentialForm {
 public:
  DifferentialForm() = default;
  DifferentialForm(ChartPtr chart, unsigned degree);
  static DifferentialForm scalar(const Expression& e);
  static DifferentialForm differential(const ChartPtr& chart, std::size_t variable);
  static DifferentialForm differential(const ChartPtr& chart, std::string_view name);
  /// Builds sum coefficient[k] * basis(k) for a 1-form.
  static DifferentialForm one_form(const ChartPtr& chart, const std::vector<Expression>& coefficients);

  const ChartPtr& chart() const { return chart_; }
  unsigned degree() const { return degree_; }
  const std::map<FormKey, Expression>& terms() const { return terms_; }
  Expression coefficient(FormKey key) const;
  Expression coefficient(const std::vector<std::size_t>& increasing) const {
    return coefficient(key_of(increasing));
  }
  bool is_zero() const { return terms_.empty(); }
  /// Adds c to the coefficient of a basis element.
  void add(FormKey key, const Expression& c);

  DifferentialForm operator-() const;
  friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator*(const Expression& c, const DifferentialForm& a);
  DifferentialForm& operator+=(const DifferentialForm& b) { return *this = *this + b; }
  bool operator==(const DifferentialForm& other) const;

 private:
  ChartPtr chart_;
  unsigned degree_ = 0;
  std::map<FormKey, Expression> terms_;
};

/// Sign of moving basis element b past basis element a (a^b in key order).
int wedge_sign(FormKey a, FormKey b);

/// Throws ChartMismatch or DegreeOverflow.
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
/// Exterior derivative in the chart's coordinates.
DifferentialForm d(const DifferentialForm& form);

/// n independent 1-forms on an n-variable chart.
class Coframe {
 public:
  /// Throws SingularCoframe when the forms are dependent.
  explicit Coframe(std::vector<DifferentialForm> forms);

  const ChartPtr& chart() const { return chart_; }
  std::size_t size() const { return forms_.size(); }
  const DifferentialForm& operator[](std::size_t i) const { return forms_.at(i); }
  const std::vector<DifferentialForm>& forms() const { return forms_; }
  /// Row i holds the coordinate components of the i-th form.
  const Matrix& matrix() const { return matrix_; }
  /// Inverse of matrix(); column i is the i-th dual vector field.
  const Matrix& dual() const { return dual_; }
  const Expression& determinant() const { return determinant_; }

 private:
  ChartPtr chart_;
  std::vector<DifferentialForm> forms_;
  Matrix matrix_, dual_;
  Expression determinant_;
};

/// Coefficients c_I with form = sum_I c_I theta^I, keyed by coframe index
/// sets. The returned form lives on the coframe's chart but its basis is
/// the coframe.
DifferentialForm express_in_coframe(const DifferentialForm& form, const Coframe& coframe);
/// Inverse of express_in_coframe: back to coordinate differentials.
DifferentialForm expand_from_coframe(const DifferentialForm& in_coframe, const Coframe& coframe);

/// Vector fields X_i with <X_i, theta^j> = delta_ij.
std::vector<Derivation> dual_frame(const Coframe& coframe);

/// Moves a form to a chart declaring the same names (and possibly more).
DifferentialForm rebase(const DifferentialForm& form, const ChartPtr& target);

/// Contraction of a 1-form with a vector field.
Expression pairing(const Derivation& x, const DifferentialForm& one_form);

}  // namespace cartan
