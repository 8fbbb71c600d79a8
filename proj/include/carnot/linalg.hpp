#pragma once

#include <optional>
#include <vector>

#include "carnot/types.hpp"

namespace carnot {

/// Gauss-Jordan reduction over exact rationals, in place. Pivots are chosen
/// deterministically: columns scanned left to right, first row with a nonzero
/// entry wins. Returns the pivot column indices.
std::vector<int> rref_inplace(MatXq& a);

int rank(MatXq a);

/// Columns span the kernel of `a`; deterministic basis (free columns in
/// increasing order, pivot coordinates filled by back substitution).
MatXq nullspace(const MatXq& a);

Rat det(MatXq a);

/// Exact inverse; throws std::invalid_argument if singular.
MatXq inverse(const MatXq& a);

/// Exact solve of a square invertible system.
VecXq solve(const MatXq& a, const VecXq& b);

/// Exact solve of A X = B for rectangular A with full column rank. Returns
/// std::nullopt when the system is inconsistent or A is column-deficient.
std::optional<MatXq> solve_exact(const MatXq& a, const MatXq& b);

}  // namespace carnot
