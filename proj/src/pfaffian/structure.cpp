#include <bit>

#include "cartan/error.hpp"
#include "cartan/pfaffian.hpp"

namespace cartan {
namespace {

using Cube = std::vector<std::vector<std::vector<Expression>>>;

Cube zeros(const ChartPtr& chart, std::size_t a, std::size_t b, std::size_t c) {
  return Cube(a, std::vector<std::vector<Expression>>(b, std::vector<Expression>(c, Expression(chart, 0))));
}

// Reads A and T off 2-forms written on the basis (omega, theta, pi), where
// omega occupies indices [0, a0), theta [a0, a0 + n) and pi the rest.
StructureEquations extract(const std::vector<DifferentialForm>& forms, std::size_t a0,
                           std::size_t n, std::size_t r) {
  StructureEquations e;
  e.chart = forms.front().chart();
  e.a = forms.size();
  e.n = n;
  e.r = r;
  e.tableau = zeros(e.chart, e.a, r, n);
  e.torsion = zeros(e.chart, e.a, n, n);
  FormKey omega_mask = (FormKey{1} << a0) - 1;
  FormKey theta_mask = ((FormKey{1} << n) - 1) << a0;
  for (std::size_t alpha = 0; alpha < forms.size(); ++alpha) {
    for (const auto& [key, c] : forms[alpha].terms()) {
      if (key & omega_mask) continue;
      std::vector<std::size_t> idx = indices_of(key);
      std::size_t thetas = static_cast<std::size_t>(std::popcount(key & theta_mask));
      if (thetas == 0) throw NotLinear();
      if (thetas == 2) {
        std::size_t j = idx[0] - a0, k = idx[1] - a0;
        e.torsion[alpha][j][k] = c;
        e.torsion[alpha][k][j] = -c;
      } else {
        // Basis theta^i ^ pi^rho is -(pi^rho ^ theta^i).
        std::size_t i = idx[0] - a0, rho = idx[1] - a0 - n;
        e.tableau[alpha][rho][i] = -c;
      }
    }
  }
  return e;
}

}  // namespace

const ChartPtr& PfaffianSystem::chart() const {
  if (!omega.empty()) return omega.front().chart();
  if (!theta.empty()) return theta.front().chart();
  return pi.front().chart();
}

Coframe PfaffianSystem::coframe() const {
  std::vector<DifferentialForm> all = omega;
  all.insert(all.end(), theta.begin(), theta.end());
  all.insert(all.end(), pi.begin(), pi.end());
  return Coframe(std::move(all));
}

bool is_linear(const PfaffianSystem& system) {
  try {
    structure_equations(system);
    return true;
  } catch (const NotLinear&) {
    return false;
  }
}

StructureEquations structure_equations(const PfaffianSystem& system) {
  Coframe frame = system.coframe();
  std::vector<DifferentialForm> forms;
  for (const DifferentialForm& w : system.omega) forms.push_back(express_in_coframe(d(w), frame));
  if (forms.empty()) {
    StructureEquations e;
    e.chart = system.chart();
    e.n = system.theta.size();
    e.r = system.pi.size();
    return e;
  }
  return extract(forms, system.omega.size(), system.theta.size(), system.pi.size());
}

StructureEquations coframe_structure_equations(const std::vector<DifferentialForm>& theta,
                                               const std::vector<DifferentialForm>& pi) {
  std::vector<DifferentialForm> all = theta;
  all.insert(all.end(), pi.begin(), pi.end());
  Coframe frame(all);
  std::vector<DifferentialForm> forms;
  for (const DifferentialForm& t : theta) forms.push_back(express_in_coframe(d(t), frame));
  return extract(forms, 0, theta.size(), pi.size());
}

DifferentialForm reconstruct(const StructureEquations& e, std::size_t alpha,
                             std::size_t omega_count) {
  DifferentialForm out(e.chart, 2);
  for (std::size_t i = 0; i < e.n; ++i)
    for (std::size_t rho = 0; rho < e.r; ++rho)
      out.add(key_of({omega_count + i, omega_count + e.n + rho}), -e.A(alpha, rho, i));
  for (std::size_t j = 0; j < e.n; ++j)
    for (std::size_t k = j + 1; k < e.n; ++k)
      out.add(key_of({omega_count + j, omega_count + k}), e.T(alpha, j, k));
  return out;
}

}  // namespace cartan
