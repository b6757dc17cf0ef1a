#pragma once

#include "eqcoh/matrix.hpp"

#include <vector>

namespace eqcoh {

/// U * A * V = D over Q[u], D diagonal with monic d_1 | d_2 | ... and U, V invertible.
struct SmithForm {
  PolyMatrix U, D, V;
  /// Nonzero diagonal entries of D, in order.
  std::vector<Polynomial> invariant_factors;
  /// Original row (column) index sitting at each position after the pivot swaps.
  std::vector<Eigen::Index> row_order, col_order;
  /// True when only swaps, pivot-row/column eliminations and row scalings were used.
  /// For a homogeneous input this makes U and V graded, so `row_order`/`col_order`
  /// carry the generator degrees through the decomposition.
  bool permutation_only = true;
};

/// Pivot rule: nonzero entry of minimal degree, ties broken by smallest row then column.
/// Throws UnsupportedRank for entries in more than one variable.
SmithForm smith_normal_form(const PolyMatrix& a);

/// Determinant by cofactor-free Bareiss elimination (square input).
Polynomial determinant(const PolyMatrix& a);

}  // namespace eqcoh
