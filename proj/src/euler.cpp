#include "eqcoh/euler.hpp"

#include "eqcoh/cartan.hpp"
#include "eqcoh/duality.hpp"
#include "eqcoh/errors.hpp"

namespace eqcoh {

Polynomial euler_linear(const LinearRepresentation& rep) {
  if (rep.trivial_multiplicity > 0) return {};
  Polynomial e(Rational(1));
  for (const auto& [w, mult] : rep.weighted) e = e * w.form().pow(mult);
  return e;
}

namespace {

Polynomial point_euler(const FixedPointDatum& p) {
  Polynomial e = euler_linear(p.tangent);
  if (e.is_zero()) throw NonIsolatedFixedPoint("fixed point '" + p.name + "' has zero Euler class");
  return e;
}

}  // namespace

LocalizedIntegral localize_values(std::span<const FixedPointDatum> points, std::span<const Polynomial> values) {
  if (points.size() != values.size()) throw StructuralError("one restriction value per fixed point expected");
  RationalFunction sum;
  for (std::size_t i = 0; i < points.size(); ++i) sum = sum + RationalFunction(values[i], point_euler(points[i]));
  return {sum, sum.is_polynomial()};
}

LocalizedIntegral localize_integral(std::span<const FixedPointDatum> points, const std::string& class_name) {
  std::vector<Polynomial> values;
  for (const auto& p : points) {
    auto it = p.restrictions.find(class_name);
    if (it == p.restrictions.end())
      throw DataError("fixed point '" + p.name + "' has no restriction for class '" + class_name + "'");
    values.push_back(it->second);
  }
  return localize_values(points, values);
}

bool LocalizationReport::ok() const {
  for (const auto& e : entries)
    if (!e.residual.is_zero()) return false;
  return true;
}

LocalizationReport localization_consistency(const InvariantModel& m) {
  if (m.fixed_points.empty()) throw DataError("model '" + m.name + "' declares no fixed points");
  for (const auto& p : m.fixed_points)
    if (!p.evaluation) throw DataError("fixed point '" + p.name + "' has no evaluation data");
  const GenericCohomology h = cohomology_generic(m);
  LocalizationReport report;
  for (std::size_t j = 0; j < h.representatives.size(); ++j) {
    std::vector<Polynomial> values;
    for (const auto& p : m.fixed_points) values.push_back(restrict_to_point(m, p, h.representatives[j]));
    LocalizationResidual r;
    r.representative = j;
    r.localized = localize_values(m.fixed_points, values).value;
    r.integrated = integrate(m, h.representatives[j]);
    r.residual = r.localized - RationalFunction(r.integrated);
    report.entries.push_back(std::move(r));
  }
  return report;
}

Rational lefschetz_number(std::span<const RationalMatrix> action) {
  Rational total = 0;
  for (std::size_t k = 0; k < action.size(); ++k) {
    const auto& a = action[k];
    if (a.rows() != a.cols())
      throw StructuralError("action on degree " + std::to_string(k) + " is " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()));
    Rational tr = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) tr += a(i, i);
    total += k % 2 == 0 ? tr : Rational(-tr);
  }
  return total;
}

bool nested_euler_check(const LinearRepresentation& inner, const LinearRepresentation& extra) {
  return euler_linear(direct_sum(inner, extra)) == euler_linear(inner) * euler_linear(extra);
}

}  // namespace eqcoh
