#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cartan/pfaffian.hpp"

namespace cartan {

// ------------------------------------------------------------ y'' = f(x,y,p)

/// Coordinates (x, y, p), group parameter a3, opaque f(x, y, p).
ChartPtr ode2_chart();

struct Ode2Problem {
  ChartPtr chart;
  Expression f;
  /// Structural group before reduction:
  ///   theta1 = a1 (dp - f dx) + a2 (dy - p dx), theta2 = a3 (dy - p dx),
  ///   theta3 = dx.
  std::vector<std::string> group{"a1", "a2", "a3"};
  /// a1 := a3, a2 := -1/2 f_p a3.
  std::vector<std::pair<std::string, Expression>> reduction;
  /// Reduced lifted coframe theta1..theta3 and the group form da3/a3.
  std::vector<DifferentialForm> lifted;
  DifferentialForm pi;
};

/// Throws DomainError unless f lives on ode2_chart() and involves only
/// x, y, p and the opaque f.
Ode2Problem make_ode2_problem(const Expression& f);

struct EquivalenceReport {
  Ode2Problem problem;
  /// First pass on the lifted coframe: tableau, torsion and its absorption.
  StructureEquations lifted_structure;
  AbsorptionSolution absorption;
  InvolutionReport lifted_involution;
  /// theta1..theta4, theta4 = pi - lambda_i theta^i.
  std::vector<DifferentialForm> coframe;
  /// d theta^i written on theta1..theta4 (basis index k is theta^{k+1}).
  std::vector<DifferentialForm> structure;
  /// Cartan test of the final e-structure.
  InvolutionReport involution;
  Expression I1, I2, I3;
  std::vector<Derivation> X;
  /// Relations on syzygy_chart(), each asserted to vanish.
  std::vector<Expression> syzygies;
};

/// Throws DomainError (via make_ode2_problem).
EquivalenceReport run_equivalence_ode2(const Expression& f);

/// Abstract chart for relations among invariants: coordinates X1..X4 stand
/// for the coframe directions, I1, I2, I3 are opaque, and the first
/// derivative of I1 along slot Xk reads Xk(I1).
ChartPtr syzygy_chart();

/// Relations obtained from d(d theta^i) = 0: the structure equations are
/// differentiated symbolically with dI = sum_i Xi(I) theta^i and the
/// coefficients of each theta^i ^ theta^j ^ theta^k collected. Duplicates
/// up to a constant factor are dropped.
std::vector<Expression> syzygies_ode2(const EquivalenceReport& report);

/// A relation from syzygy_chart() expanded through the report's X and I.
Expression syzygy_in_coordinates(const EquivalenceReport& report, const Expression& relation);

// ---------------------------------------------------------------- flatness

struct FlatnessVerdict {
  bool flat = false;
  std::vector<std::string> names;
  std::vector<Expression> residuals;
  /// Index of the first nonzero residual, or -1.
  int failing() const;
};

struct Ode2Flatness : FlatnessVerdict {
  /// Whether I1 = I2 = 0 gives the same verdict.
  bool invariants_agree = false;
};

/// Residuals f_ppp and f_xp + f_pp f - 2 f_y - 1/2 f_p^2 + p f_yp.
Ode2Flatness check_flat_ode2(const Expression& f);

/// (t, x1, x2, dx1, dx2) with opaque F1, F2 on all five.
ChartPtr ode_system_chart();
/// D_t = d/dt + dx1 d/dx1 + dx2 d/dx2 + F1 d/d(dx1) + F2 d/d(dx2).
Derivation ode_system_total_derivative(const Expression& F1, const Expression& F2);
/// The eight conditions for x'' = F to be point-equivalent to x'' = 0.
FlatnessVerdict check_flat_ode_system(const Expression& F1, const Expression& F2);

/// (x1, x2, u, u1, u2) with opaque f11, f12, f22 on all five.
ChartPtr pde_system_chart();
/// The five second-order conditions on u_ab = f_ab(x, u, u').
FlatnessVerdict check_flat_pde_system(const Expression& f11, const Expression& f12,
                                      const Expression& f22);

// ------------------------------------------------------------- transforms

/// The f for which (x, y) -> (x + C, eta(x, y)) maps y'' = f to
/// y'' = fbar, all on ode2_chart() (fbar uses x, y, p for the barred
/// variables). Throws DomainError for bad dependencies and
/// VanishingJacobian when eta_y = 0.
Expression pullback_ode2(const Expression& eta, const Expression& C, const Expression& fbar);

struct PainleveAnswer {
  /// I2 = I3 = 0.
  bool in_class = false;
  bool equivalent = false;
  Expression eta, C;
  /// Failing condition and its residual when not equivalent.
  std::string failing;
  Expression residual;
};

/// Point transformation to y'' = 6 y^2 + x, read off the invariants:
/// eta = -I1/12, C = -1/24 I1^2 - 1/12 X3(X3(I1)) - x.
PainleveAnswer painleve_map(const Expression& f);

/// (x, y, p, q) with opaque f(x, y, p, q), xi(x, y, p), eta(x, y, p).
ChartPtr ode3_chart();

struct SwellReport {
  Expression pbar, qbar, rbar;
  /// Numerator monomial counts of pbar, qbar, rbar.
  std::size_t monomials[3] = {0, 0, 0};
};

/// Prolongation of (x, y) -> (xi, eta) to third order along y''' = f.
/// Throws DomainError or VanishingJacobian (D_x xi = 0).
SwellReport contact_prolongation_ode3(const Expression& xi, const Expression& eta);

}  // namespace cartan
