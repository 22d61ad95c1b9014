#pragma once

#include <string>
#include <vector>

#include "cartan/exterior.hpp"
#include "cartan/matrix.hpp"

namespace cartan {

/// Pfaffian system omega = 0 with independence condition on theta, completed
/// to a coframe (omega, theta, pi) of its chart.
struct PfaffianSystem {
  std::vector<DifferentialForm> omega;
  std::vector<DifferentialForm> theta;
  std::vector<DifferentialForm> pi;

  const ChartPtr& chart() const;
  /// (omega, theta, pi) in that order; throws SingularCoframe.
  Coframe coframe() const;
};

/// d omega^a = A^a_{rho i} pi^rho ^ theta^i + 1/2 T^a_{jk} theta^j ^ theta^k.
struct StructureEquations {
  ChartPtr chart;
  std::size_t a = 0, n = 0, r = 0;
  /// tableau[a][rho][i]
  std::vector<std::vector<std::vector<Expression>>> tableau;
  /// torsion[a][j][k], antisymmetric in (j, k)
  std::vector<std::vector<std::vector<Expression>>> torsion;

  const Expression& A(std::size_t alpha, std::size_t rho, std::size_t i) const {
    return tableau.at(alpha).at(rho).at(i);
  }
  const Expression& T(std::size_t alpha, std::size_t j, std::size_t k) const {
    return torsion.at(alpha).at(j).at(k);
  }
};

/// True when no d omega has a pi^pi component modulo the omegas.
bool is_linear(const PfaffianSystem& system);

/// Throws NotLinear.
StructureEquations structure_equations(const PfaffianSystem& system);

/// Structure equations of a lifted coframe theta with group forms pi:
/// d theta^a = A^a_{rho i} pi^rho ^ theta^i + 1/2 T^a_{jk} theta^j ^ theta^k,
/// with nothing discarded. Throws NotLinear if pi^pi terms appear.
StructureEquations coframe_structure_equations(const std::vector<DifferentialForm>& theta,
                                               const std::vector<DifferentialForm>& pi);

/// The 2-form A pi^theta + 1/2 T theta^theta rebuilt from the coefficients,
/// written on the (omega, theta, pi) basis of `system`.
DifferentialForm reconstruct(const StructureEquations& e, std::size_t alpha,
                             std::size_t omega_count);

struct AbsorptionSolution {
  std::size_t n = 0, r = 0;
  /// Particular solution; entry rho * n + i is lambda^rho_i.
  std::vector<Expression> lambda;
  /// Indices of the unknowns left free (future prolongation coordinates).
  std::vector<std::size_t> free;
  /// One homogeneous solution per free unknown (that unknown set to one).
  std::vector<std::vector<Expression>> homogeneous;
  /// Rows y with y * L = 0, echelon-normalized.
  Matrix obstruction;
  /// Nonzero entries of obstruction * T: the essential torsion.
  std::vector<Expression> essential;

  const Expression& lambda_at(std::size_t rho, std::size_t i) const { return lambda.at(rho * n + i); }
};

/// Torsion equations in the unknowns lambda^rho_i (column rho * n + i).
/// Rows are (alpha, j < k) in lexicographic order.
Matrix absorption_matrix(const StructureEquations& e);
std::vector<Expression> torsion_vector(const StructureEquations& e);

/// Solves T^a_jk = A^a_{rho j} lambda^rho_k - A^a_{rho k} lambda^rho_j.
/// `unknown_order`, when given, permutes the elimination order of the
/// unknowns (the result is still indexed by rho * n + i).
AbsorptionSolution absorb_torsion(const StructureEquations& e,
                                  const std::vector<std::size_t>& unknown_order = {});

struct InvolutionReport {
  std::vector<std::size_t> characters;  // s_1 .. s_n
  std::size_t prolonged_dimension = 0;
  std::size_t cartan_bound = 0;  // s_1 + 2 s_2 + ... + n s_n
  bool involutive = false;
};

/// Reduced characters from generic flag ranks of the tableau, and Cartan's
/// test. Directions of pi absent from the tableau are left out.
InvolutionReport cartan_characters(const StructureEquations& e, std::uint64_t seed = 1);

/// Rank of the tableau restricted to the flag spanned by the first k rows
/// of `flag` (an n x n matrix of constants).
std::size_t flag_rank(const StructureEquations& e, const std::vector<std::vector<Rational>>& flag,
                      std::size_t k);

/// Contact system of q-jets of maps from n to m variables.
PfaffianSystem contact_system(std::size_t n, std::size_t m, std::size_t q);

/// One prolongation step: the free lambdas become coordinates, each
/// pi^rho - lambda^rho_i theta^i joins the system, and the differentials of
/// the new coordinates complete the coframe. Throws NonEmptyEssentialTorsion
/// unless the essential torsion vanishes or `accept_torsion` is set.
PfaffianSystem prolong(const PfaffianSystem& system, const AbsorptionSolution& solution,
                       bool accept_torsion = false, std::vector<std::string> names = {});

}  // namespace cartan
