#pragma once

#include <optional>

#include "fisherkit/types.hpp"

namespace fisher {

// Exact-fraction Gauss-Jordan over the columns of X^T. Returns a primitive
// integer vector tau (gcd 1, first nonzero entry positive) with tau^T X = 0,
// or nullopt when the rows of X are linearly independent. This is the
// guaranteed-termination fallback for the rounding loop in beck_fiala_color;
// everything else in the production path sticks to the counting search.
std::optional<BigIntVector> left_kernel_by_elimination(const IntMatrix& X);

// Test oracle: true iff the only rational tau with tau^T X = 0 is zero.
// Exists to cross-check find_left_kernel_vector; keep it out of production
// call paths.
bool oracle_nullspace_trivial(const IntMatrix& X);

}  // namespace fisher
