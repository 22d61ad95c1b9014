#include <algorithm>
#include <map>

#include "cartan/error.hpp"
#include "cartan/pfaffian.hpp"

namespace cartan {
namespace {

// Nondecreasing multi-indices over {1..n} of a given length.
void multi_indices(std::size_t n, std::size_t length, std::size_t start,
                   std::vector<std::size_t>& current, std::vector<std::vector<std::size_t>>& out) {
  if (current.size() == length) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = start; i <= n; ++i) {
    current.push_back(i);
    multi_indices(n, length, i, current, out);
    current.pop_back();
  }
}

std::string jet_name(const std::string& base, std::size_t n, const std::vector<std::size_t>& index) {
  if (index.empty()) return base;
  if (n == 1) return base + std::to_string(index.size());
  std::string out = base;
  for (std::size_t i : index) out += std::to_string(i);
  return out;
}

}  // namespace

PfaffianSystem contact_system(std::size_t n, std::size_t m, std::size_t q) {
  if (n == 0 || m == 0 || q == 0) throw DomainError("contact system needs n, m, q >= 1");
  if (n > 9) throw DomainError("at most 9 independent variables");
  static const char* letters[] = {"u", "v", "w", "z", "s"};
  if (m > std::size(letters)) throw DomainError("at most 5 dependent variables");

  ChartSpec spec;
  for (std::size_t i = 1; i <= n; ++i) spec.coordinates.push_back(n == 1 ? "x" : "x" + std::to_string(i));
  std::vector<std::vector<std::vector<std::size_t>>> by_order(q + 1);
  for (std::size_t k = 0; k <= q; ++k) {
    std::vector<std::size_t> current;
    multi_indices(n, k, 1, current, by_order[k]);
  }
  for (std::size_t k = 0; k <= q; ++k)
    for (std::size_t alpha = 0; alpha < m; ++alpha)
      for (const auto& index : by_order[k]) spec.coordinates.push_back(jet_name(letters[alpha], n, index));
  ChartPtr chart = Chart::make(spec);

  PfaffianSystem s;
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t alpha = 0; alpha < m; ++alpha)
      for (const auto& index : by_order[k]) {
        DifferentialForm w = DifferentialForm::differential(chart, jet_name(letters[alpha], n, index));
        for (std::size_t i = 1; i <= n; ++i) {
          std::vector<std::size_t> next = index;
          next.insert(std::upper_bound(next.begin(), next.end(), i), i);
          Expression coeff = -Expression::variable(chart, jet_name(letters[alpha], n, next));
          w += coeff * DifferentialForm::differential(chart, i - 1);
        }
        s.omega.push_back(std::move(w));
      }
  for (std::size_t i = 0; i < n; ++i) s.theta.push_back(DifferentialForm::differential(chart, i));
  for (std::size_t alpha = 0; alpha < m; ++alpha)
    for (const auto& index : by_order[q])
      s.pi.push_back(DifferentialForm::differential(chart, jet_name(letters[alpha], n, index)));
  return s;
}

PfaffianSystem prolong(const PfaffianSystem& system, const AbsorptionSolution& solution,
                       bool accept_torsion, std::vector<std::string> names) {
  if (!solution.essential.empty() && !accept_torsion) throw NonEmptyEssentialTorsion();
  const ChartPtr& old_chart = system.chart();
  std::size_t n = system.theta.size(), r = system.pi.size();
  if (solution.n != n || solution.r != r) throw DomainError("absorption does not match the system");

  if (names.empty())
    for (std::size_t f : solution.free)
      names.push_back("l" + std::to_string(f / n + 1) + "_" + std::to_string(f % n + 1));
  if (names.size() != solution.free.size()) throw DomainError("one name per free unknown required");

  ChartSpec spec = old_chart->spec();
  spec.coordinates.insert(spec.coordinates.end(), names.begin(), names.end());
  ChartPtr chart = names.empty() ? old_chart : Chart::make(spec);

  std::vector<Expression> lambda;
  for (const Expression& v : solution.lambda) lambda.push_back(rebase(v, chart));
  for (std::size_t k = 0; k < names.size(); ++k) {
    Expression coord = Expression::variable(chart, names[k]);
    for (std::size_t u = 0; u < lambda.size(); ++u)
      if (!solution.homogeneous[k][u].is_zero())
        lambda[u] += coord * rebase(solution.homogeneous[k][u], chart);
  }

  PfaffianSystem out;
  for (const DifferentialForm& w : system.omega) out.omega.push_back(rebase(w, chart));
  for (const DifferentialForm& t : system.theta) out.theta.push_back(rebase(t, chart));
  for (std::size_t rho = 0; rho < r; ++rho) {
    DifferentialForm w = rebase(system.pi[rho], chart);
    for (std::size_t i = 0; i < n; ++i)
      if (!lambda[rho * n + i].is_zero()) w = w - lambda[rho * n + i] * out.theta[i];
    out.omega.push_back(std::move(w));
  }
  for (const std::string& name : names) out.pi.push_back(DifferentialForm::differential(chart, name));
  return out;
}

}  // namespace cartan
