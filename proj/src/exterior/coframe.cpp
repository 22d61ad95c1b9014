#include <algorithm>
#include <bit>

#include "cartan/error.hpp"
#include "cartan/exterior.hpp"

namespace cartan {
namespace {

// det of the square submatrix of m with the given rows and columns.
Expression minor(const Matrix& m, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
  std::size_t k = rows.size();
  if (k == 0) return Expression(m.chart(), 1);
  if (k == 1) return m.at(rows[0], cols[0]);
  if (k == 2)
    return m.at(rows[0], cols[0]) * m.at(rows[1], cols[1]) -
           m.at(rows[0], cols[1]) * m.at(rows[1], cols[0]);
  Matrix sub(m.chart(), k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rows[i], cols[j]);
  return determinant(sub);
}

// All k-subsets of {0..n-1} as keys, in increasing numeric order.
std::vector<FormKey> subsets(std::size_t n, unsigned k) {
  std::vector<FormKey> out;
  for (FormKey key = 0; key < (FormKey{1} << n); ++key)
    if (static_cast<unsigned>(std::popcount(key)) == k) out.push_back(key);
  return out;
}

}  // namespace

Coframe::Coframe(std::vector<DifferentialForm> forms) : forms_(std::move(forms)) {
  if (forms_.empty()) throw SingularCoframe();
  chart_ = forms_.front().chart();
  std::size_t n = chart_->dimension();
  if (forms_.size() != n) throw SingularCoframe();
  matrix_ = Matrix(chart_, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (forms_[i].degree() != 1) throw std::invalid_argument("coframe members must be 1-forms");
    if (!same_chart(forms_[i].chart(), chart_)) throw ChartMismatch();
    for (const auto& [key, c] : forms_[i].terms())
      matrix_.at(i, static_cast<std::size_t>(std::countr_zero(key))) = c;
  }
  dual_ = inverse(matrix_);
  determinant_ = cartan::determinant(matrix_);
}

DifferentialForm express_in_coframe(const DifferentialForm& form, const Coframe& coframe) {
  if (!same_chart(form.chart(), coframe.chart())) throw ChartMismatch();
  DifferentialForm out(form.chart(), form.degree());
  if (form.degree() == 0) return form;
  std::size_t size = coframe.size();
  if (form.degree() == 1) {
    const Matrix& n = coframe.dual();
    for (std::size_t i = 0; i < size; ++i) {
      Expression c(form.chart(), 0);
      for (const auto& [key, value] : form.terms())
        c += value * n.at(static_cast<std::size_t>(std::countr_zero(key)), i);
      out.add(FormKey{1} << i, c);
    }
    return out;
  }
  // Minors of the inverse via Jacobi: det N[J, I] = +-det M[I', J'] / det M,
  // primes denoting complements. Everything shares the denominator det M.
  const Matrix& m = coframe.matrix();
  FormKey all = (FormKey{1} << size) - 1;
  auto index_sum = [](FormKey key) {
    std::size_t s = 0;
    for (std::size_t i : indices_of(key)) s += i;
    return s;
  };
  for (FormKey target : subsets(size, form.degree())) {
    Expression c(form.chart(), 0);
    for (const auto& [key, value] : form.terms()) {
      Expression mm = minor(m, indices_of(all & ~target), indices_of(all & ~key));
      if (mm.is_zero()) continue;
      c += (index_sum(key) + index_sum(target)) % 2 ? -(value * mm) : value * mm;
    }
    if (!c.is_zero()) out.add(target, c / coframe.determinant());
  }
  return out;
}

DifferentialForm expand_from_coframe(const DifferentialForm& in_coframe, const Coframe& coframe) {
  DifferentialForm out(coframe.chart(), in_coframe.degree());
  for (const auto& [key, c] : in_coframe.terms()) {
    DifferentialForm basis = DifferentialForm::scalar(Expression(coframe.chart(), 1));
    for (std::size_t i : indices_of(key)) basis = wedge(basis, coframe[i]);
    out += c * basis;
  }
  return out;
}

std::vector<Derivation> dual_frame(const Coframe& coframe) {
  std::vector<Derivation> out;
  const Matrix& n = coframe.dual();
  for (std::size_t i = 0; i < coframe.size(); ++i) {
    std::vector<Expression> comps;
    for (std::size_t a = 0; a < n.rows(); ++a) comps.push_back(n.at(a, i));
    out.emplace_back(coframe.chart(), std::move(comps));
  }
  return out;
}

Expression pairing(const Derivation& x, const DifferentialForm& one_form) {
  if (one_form.degree() != 1) throw std::invalid_argument("pairing needs a 1-form");
  Expression out(x.chart(), 0);
  for (const auto& [key, c] : one_form.terms())
    out += c * x.component(static_cast<std::size_t>(std::countr_zero(key)));
  return out;
}

}  // namespace cartan
