#include <bit>

#include "cartan/error.hpp"
#include "cartan/exterior.hpp"

namespace cartan {

FormKey key_of(const std::vector<std::size_t>& indices) {
  FormKey key = 0;
  for (std::size_t i : indices) {
    FormKey bit = FormKey{1} << i;
    if (key & bit) throw std::invalid_argument("repeated basis index");
    key |= bit;
  }
  return key;
}

std::vector<std::size_t> indices_of(FormKey key) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; key != 0; ++i, key >>= 1)
    if (key & 1u) out.push_back(i);
  return out;
}

int wedge_sign(FormKey a, FormKey b) {
  // Each element of b must pass every element of a with a larger index.
  unsigned inversions = 0;
  for (FormKey rest = b; rest != 0; rest &= rest - 1) {
    FormKey bit = rest & (~rest + 1);
    inversions += static_cast<unsigned>(std::popcount(a & ~(bit | (bit - 1))));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

DifferentialForm::DifferentialForm(ChartPtr chart, unsigned degree)
    : chart_(std::move(chart)), degree_(degree) {
  if (degree_ > chart_->dimension()) throw DegreeOverflow();
}

DifferentialForm DifferentialForm::scalar(const Expression& e) {
  DifferentialForm f(e.chart(), 0);
  f.add(0, e);
  return f;
}

DifferentialForm DifferentialForm::differential(const ChartPtr& chart, std::size_t variable) {
  if (variable >= chart->dimension()) throw UnknownName("#" + std::to_string(variable));
  DifferentialForm f(chart, 1);
  f.add(FormKey{1} << variable, Expression(chart, 1));
  return f;
}

DifferentialForm DifferentialForm::differential(const ChartPtr& chart, std::string_view name) {
  return differential(chart, chart->index_of(name));
}

DifferentialForm DifferentialForm::one_form(const ChartPtr& chart,
                                            const std::vector<Expression>& coefficients) {
  DifferentialForm f(chart, 1);
  for (std::size_t k = 0; k < coefficients.size(); ++k) f.add(FormKey{1} << k, coefficients[k]);
  return f;
}

Expression DifferentialForm::coefficient(FormKey key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Expression(chart_, 0) : it->second;
}

void DifferentialForm::add(FormKey key, const Expression& c) {
  if (c.is_zero()) return;
  if (static_cast<unsigned>(std::popcount(key)) != degree_)
    throw std::invalid_argument("basis element has the wrong degree");
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm out = *this;
  for (auto& [key, c] : out.terms_) c = -c;
  return out;
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
  if (!same_chart(a.chart_, b.chart_)) throw ChartMismatch();
  if (a.degree_ != b.degree_) throw std::invalid_argument("adding forms of different degree");
  DifferentialForm out = a;
  for (const auto& [key, c] : b.terms_) out.add(key, c);
  return out;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
  return a + (-b);
}

DifferentialForm operator*(const Expression& c, const DifferentialForm& a) {
  DifferentialForm out(a.chart_, a.degree_);
  if (c.is_zero()) return out;
  for (const auto& [key, v] : a.terms_) out.add(key, c * v);
  return out;
}

bool DifferentialForm::operator==(const DifferentialForm& other) const {
  return degree_ == other.degree_ && same_chart(chart_, other.chart_) && terms_ == other.terms_;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (!same_chart(a.chart(), b.chart())) throw ChartMismatch();
  if (a.degree() + b.degree() > a.chart()->dimension()) throw DegreeOverflow();
  DifferentialForm out(a.chart(), a.degree() + b.degree());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      if (ka & kb) continue;
      Expression c = ca * cb;
      out.add(ka | kb, wedge_sign(ka, kb) < 0 ? -c : c);
    }
  return out;
}

DifferentialForm d(const DifferentialForm& form) {
  const ChartPtr& chart = form.chart();
  DifferentialForm out(chart, form.degree() + 1);
  for (const auto& [key, c] : form.terms())
    for (std::size_t v = 0; v < chart->dimension(); ++v) {
      FormKey bit = FormKey{1} << v;
      if (key & bit) continue;
      Expression dc = partial(c, v);
      if (dc.is_zero()) continue;
      // dv ^ dx_I: dv moves past the indices of I below v.
      bool odd = std::popcount(key & (bit - 1)) % 2 != 0;
      out.add(key | bit, odd ? -dc : dc);
    }
  return out;
}

DifferentialForm rebase(const DifferentialForm& form, const ChartPtr& target) {
  const ChartPtr& source = form.chart();
  DifferentialForm out(target, form.degree());
  for (const auto& [key, c] : form.terms()) {
    std::vector<std::size_t> order;
    for (std::size_t v : indices_of(key)) order.push_back(target->index_of(source->variable_name(v)));
    Expression value = rebase(c, target);
    // Re-sorting the basis differentials may flip the sign.
    unsigned inversions = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j)
        if (order[i] > order[j]) ++inversions;
    out.add(key_of(order), inversions % 2 ? -value : value);
  }
  return out;
}

}  // namespace cartan
