#pragma once

#include "eqcoh/model.hpp"
#include "eqcoh/rational_function.hpp"

#include <span>
#include <string>
#include <vector>

namespace eqcoh {

/// 0 when the representation has a trivial summand, else the product of its weights
/// with multiplicity. The empty representation gives 1.
Polynomial euler_linear(const LinearRepresentation& rep);

struct LocalizedIntegral {
  RationalFunction value;
  bool is_polynomial = false;
};

/// sum over points of (restriction of `class_name`) / euler_linear(tangent).
LocalizedIntegral localize_integral(std::span<const FixedPointDatum> points, const std::string& class_name);
/// Same sum for explicit restriction values, one per point.
LocalizedIntegral localize_values(std::span<const FixedPointDatum> points, std::span<const Polynomial> values);

struct LocalizationResidual {
  std::size_t representative = 0;
  RationalFunction localized;
  Polynomial integrated;
  RationalFunction residual;
};

struct LocalizationReport {
  std::vector<LocalizationResidual> entries;
  bool ok() const;
};

/// Localization sum minus integral, for every generic representative of m.
/// Needs a compact model whose fixed points all carry evaluation data.
LocalizationReport localization_consistency(const InvariantModel& m);

/// sum_k (-1)^k tr(action[k]).
Rational lefschetz_number(std::span<const RationalMatrix> action);

/// euler_linear(inner + extra) == euler_linear(inner) * euler_linear(extra).
bool nested_euler_check(const LinearRepresentation& inner, const LinearRepresentation& extra);

}  // namespace eqcoh
