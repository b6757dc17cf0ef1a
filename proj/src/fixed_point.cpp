#include "eqcoh/fixed_point.hpp"

#include "eqcoh/errors.hpp"

namespace eqcoh {

Polynomial Weight::form() const {
  Polynomial p;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) p += Polynomial::variable(i) * Rational(coeffs[i]);
  return p;
}

bool Weight::is_zero() const {
  for (auto a : coeffs)
    if (a != 0) return false;
  return true;
}

unsigned LinearRepresentation::real_dimension() const {
  unsigned dim = trivial_multiplicity;
  for (const auto& [w, mult] : weighted) dim += 2 * mult;
  return dim;
}

void LinearRepresentation::validate(std::size_t torus_rank) const {
  for (const auto& [w, mult] : weighted) {
    if (w.coeffs.size() != torus_rank)
      throw DataError("weight of length " + std::to_string(w.coeffs.size()) + " for torus rank " +
                      std::to_string(torus_rank));
    if (w.is_zero()) throw DataError("zero weight in the weighted part of a representation");
    if (mult == 0) throw DataError("weight with multiplicity zero");
  }
}

LinearRepresentation direct_sum(const LinearRepresentation& a, const LinearRepresentation& b) {
  LinearRepresentation r = a;
  r.trivial_multiplicity += b.trivial_multiplicity;
  r.weighted.insert(r.weighted.end(), b.weighted.begin(), b.weighted.end());
  return r;
}

bool FixedPointDatum::operator==(const FixedPointDatum& o) const {
  if (name != o.name || !(tangent == o.tangent) || restrictions != o.restrictions) return false;
  if (evaluation.has_value() != o.evaluation.has_value()) return false;
  return !evaluation || same_matrix(*evaluation, *o.evaluation);
}

}  // namespace eqcoh
