#pragma once

#include <optional>
#include <vector>

#include "cartan/polynomial.hpp"

namespace cartan::detail {

// Dense modular gcd (Brown) over several word-size primes, recombined by
// CRT and confirmed by trial division. Both operands must involve exactly
// `vars`. Returns nullopt when it gives up; the caller then falls back.
std::optional<Polynomial> modular_gcd(const Polynomial& a, const Polynomial& b,
                                      const std::vector<Symbol>& vars);

}  // namespace cartan::detail
