#pragma once

#include "eqcoh/matrix.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqcoh {

/// A character of the torus, realized as the linear form sum_i a_i u_i.
struct Weight {
  std::vector<std::int64_t> coeffs;

  Polynomial form() const;
  bool is_zero() const;
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// V = R^{mu_0} + sum over weights alpha of C(alpha)^{mu(alpha)}.
struct LinearRepresentation {
  unsigned trivial_multiplicity = 0;
  std::vector<std::pair<Weight, unsigned>> weighted;

  unsigned real_dimension() const;
  /// Throws DataError on a zero weight in the weighted part, a zero multiplicity, or a
  /// weight whose length differs from `torus_rank`.
  void validate(std::size_t torus_rank) const;
  friend bool operator==(const LinearRepresentation&, const LinearRepresentation&) = default;
};

LinearRepresentation direct_sum(const LinearRepresentation& a, const LinearRepresentation& b);

/// An isolated fixed point: tangent representation, named restriction values, and
/// optionally the evaluation of every model generator at the point (zero on generators
/// of positive degree), from which restrictions of arbitrary elements are computed.
struct FixedPointDatum {
  std::string name;
  LinearRepresentation tangent;
  std::map<std::string, Polynomial> restrictions;
  std::optional<RationalVector> evaluation;

  bool operator==(const FixedPointDatum& o) const;
};

}  // namespace eqcoh
