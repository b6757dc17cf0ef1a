#include "eqcoh/cartan.hpp"
#include "eqcoh/euler.hpp"
#include "eqcoh/gysin.hpp"
#include "eqcoh/models.hpp"

#include <doctest.h>

using namespace eqcoh;
using Eigen::Index;

namespace {

const Polynomial u = Polynomial::variable(0);

ModelPtr ptr(InvariantModel m) { return std::make_shared<const InvariantModel>(std::move(m)); }

bool all_zero(const FracMatrix& a) { return is_zero_matrix(a); }

bool has_axiom(const ValidationReport& r, const std::string& axiom) {
  for (const auto& v : r.violations)
    if (v.axiom == axiom) return true;
  return false;
}

IntMatrix int_matrix(Index rows, Index cols, std::initializer_list<std::int64_t> entries) {
  IntMatrix a(rows, cols);
  auto it = entries.begin();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = *it++;
  return a;
}

}  // namespace

TEST_CASE("map validation") {
  const auto s2 = ptr(s2_rotation());
  const auto pt = ptr(point(1));
  CHECK(validate_map(identity_map(s2)).ok());
  CHECK(validate_map(fixed_point_inclusion(pt, s2, 0)).ok());
  CHECK(validate_map(fixed_point_inclusion(pt, s2, 1)).ok());
  CHECK(validate_map(constant_map(s2, pt)).ok());

  ModelMap bad = fixed_point_inclusion(pt, s2, 0);
  bad.pullback(0, *s2->index_of("vol")) = 1;
  const auto r = validate_map(bad);
  CHECK_FALSE(r.ok());
  CHECK(has_axiom(r, "deg(f*) ≠ 0"));

  const auto cf = ptr(circle_free());
  const auto ct = ptr(circle_trivial(1));
  ModelMap forget{"forget", cf, ct, RationalMatrix::Identity(2, 2), true};
  CHECK(has_axiom(validate_map(forget), "f*∘c ≠ c∘f*"));

  ModelMap wrong{"wrong", s2, pt, RationalMatrix::Zero(2, 2), true};
  CHECK_THROWS_AS(validate_map(wrong), StructuralError);
}

TEST_CASE("pullback in cohomology") {
  const auto s2 = ptr(s2_rotation());
  const auto pt = ptr(point(1));
  CHECK(same_matrix(pullback_cohomology(identity_map(s2)), FracMatrix::Identity(2, 2)));
  const FracMatrix c = pullback_cohomology(constant_map(s2, pt));
  CHECK(c(0, 0) == RationalFunction(1));
  CHECK(c(1, 0) == RationalFunction(0));
  const FracMatrix iN = pullback_cohomology(fixed_point_inclusion(pt, s2, 0));
  CHECK(iN(0, 0) == RationalFunction(1));
  CHECK(iN(0, 1) == RationalFunction(u));
  const FracMatrix iS = pullback_cohomology(fixed_point_inclusion(pt, s2, 1));
  CHECK(iS(0, 1) == RationalFunction(-u));
}

TEST_CASE("Gysin matrices from the adjunction") {
  const auto s2 = ptr(s2_rotation());
  const auto pt = ptr(point(1));

  const GysinMatrix id = gysin_localized(identity_map(s2));
  CHECK(same_matrix(id.matrix, FracMatrix::Identity(2, 2)));
  CHECK(id.degree_shift == 0);

  const ModelMap c = constant_map(s2, pt);
  const GysinMatrix cg = gysin_localized(c);
  CHECK(cg.degree_shift == 2);
  CHECK(cg.matrix(0, 0) == RationalFunction(0));
  CHECK(cg.matrix(0, 1) == RationalFunction(integrate(*s2, s2->classes.at("w"))));
  CHECK(all_zero(adjunction_residual(c, cg)));

  for (std::size_t k = 0; k < 2; ++k) {
    const ModelMap i = fixed_point_inclusion(pt, s2, k);
    const GysinMatrix ig = gysin_localized(i);
    CHECK(ig.degree_shift == -2);
    CHECK(all_zero(adjunction_residual(i, ig)));
    const FracMatrix self = mul(pullback_cohomology(i), ig.matrix);
    CHECK(self(0, 0) == RationalFunction(euler_linear(s2->fixed_points[k].tangent)));
  }
  const GysinMatrix iN = gysin_localized(fixed_point_inclusion(pt, s2, 0));
  CHECK(iN.matrix(0, 0) == RationalFunction(Polynomial(Rational(1, 2)) * u));
  CHECK(iN.matrix(1, 0) == RationalFunction(Rational(1, 2)));

  CHECK_THROWS_AS(gysin_localized(identity_map(ptr(obstruction_pair()))), Unsupported);
}

TEST_CASE("Gysin is functorial") {
  const auto s2 = ptr(s2_rotation());
  const auto pt = ptr(point(1));
  for (std::size_t k = 0; k < 2; ++k) {
    const ModelMap i = fixed_point_inclusion(pt, s2, k);
    const ModelMap c = constant_map(s2, pt);
    const ModelMap ci = compose(c, i);
    CHECK(validate_map(ci).ok());
    const FracMatrix composite = gysin_localized(ci).matrix;
    const FracMatrix product = mul(gysin_localized(c).matrix, gysin_localized(i).matrix);
    CHECK(same_matrix(composite, product));
    CHECK(same_matrix(composite, FracMatrix::Identity(1, 1)));
  }
  const auto sw = ptr(c_alpha({1, 2}));
  const auto pt2 = ptr(point(2));
  const ModelMap i = fixed_point_inclusion(pt2, sw, 1);
  const ModelMap c = constant_map(sw, pt2);
  CHECK(same_matrix(gysin_localized(compose(c, i)).matrix,
                    mul(gysin_localized(c).matrix, gysin_localized(i).matrix)));
}

TEST_CASE("projection formula") {
  const auto s2 = ptr(s2_rotation());
  const auto pt = ptr(point(1));
  const auto sw = ptr(c_alpha({1, 2}));
  const auto pt2 = ptr(point(2));
  const std::vector<ModelMap> maps{identity_map(s2), constant_map(s2, pt), fixed_point_inclusion(pt, s2, 0),
                                   fixed_point_inclusion(pt, s2, 1), identity_map(sw), constant_map(sw, pt2),
                                   fixed_point_inclusion(pt2, sw, 0)};
  for (const auto& f : maps) {
    INFO(f.name << " into " << f.target->name);
    const auto samples = default_projection_samples(f);
    CHECK_FALSE(samples.empty());
    for (const auto& r : projection_formula_check(f, samples)) CHECK(is_zero_matrix(r));
  }
  const ModelMap i = fixed_point_inclusion(pt, s2, 0);
  ProjectionSample w{FracVector::Zero(2), FracVector::Constant(1, RationalFunction(1))};
  w.alpha(1) = 1;
  CHECK(is_zero_matrix(projection_formula_check(i, {w}).front()));
}

TEST_CASE("equivariant extension of closed forms") {
  const InvariantModel s2 = s2_rotation();
  RationalVector vol = RationalVector::Zero(8);
  vol(*s2.index_of("vol")) = 1;
  const EquivariantElement phi = thom_extend(s2, vol);
  CHECK(is_zero_matrix(cartan_differential(s2, phi)));
  CHECK(same_matrix(phi, s2.classes.at("w")));
  const auto h = cohomology_generic(s2);
  const FracVector coords = generic_coordinates(s2, h, phi);
  CHECK(coords(0) == RationalFunction(0));
  CHECK(coords(1) == RationalFunction(1));

  const InvariantModel ct = circle_trivial(1);
  RationalVector b1 = RationalVector::Zero(2);
  b1(1) = 1;
  CHECK(same_matrix(thom_extend(ct, b1), b1.cast<Polynomial>()));

  const InvariantModel ob = obstruction_pair();
  RationalVector a = RationalVector::Zero(2);
  a(0) = 1;
  try {
    thom_extend(ob, a);
    FAIL("expected an obstruction");
  } catch (const ObstructionError& e) {
    CHECK(e.form_degree() == -1);
  }
  RationalVector open = RationalVector::Zero(8);
  open(*s2.index_of("omega")) = 1;
  CHECK_THROWS_AS(thom_extend(s2, open), StructuralError);

  const InvariantModel sw = c_alpha({1, 2});
  const EquivariantElement psi = thom_extend(sw, vol);
  CHECK(is_zero_matrix(cartan_differential(sw, psi)));
  CHECK(same_matrix(psi, sw.classes.at("w")));
}

TEST_CASE("subtorus restriction") {
  const InvariantModel s2 = s2_rotation();
  const InvariantModel same = restrict_subtorus(s2, int_matrix(1, 1, {1}));
  CHECK(same_matrix(same.contractions[0], s2.contractions[0]));
  CHECK(same.classes == s2.classes);

  const InvariantModel ra = restrict_subtorus(rema_adj(), int_matrix(2, 1, {0, 1}));
  const InvariantModel cf = circle_free();
  CHECK(same_matrix(ra.d, cf.d));
  CHECK(same_matrix(ra.contractions[0], cf.contractions[0]));
  CHECK(ra.torus_rank == 1);

  const InvariantModel dead = restrict_subtorus(rema_adj(), int_matrix(2, 1, {1, 0}));
  CHECK(cohomology_hilbert(dead, 4) == std::vector<std::size_t>{1, 1, 1, 1, 1});

  const InvariantModel sw = restrict_subtorus(c_alpha({1, 2}), int_matrix(2, 1, {1, 1}));
  CHECK(sw.fixed_points[0].tangent.weighted.front().first.coeffs == std::vector<std::int64_t>{3});
  CHECK(validate_model(sw).ok());
  CHECK(cohomology_hilbert(sw, 6) == cohomology_hilbert(c_alpha({3}), 6));

  const InvariantModel kills = restrict_subtorus(c_alpha({1, -1}), int_matrix(2, 1, {1, 1}));
  CHECK(kills.fixed_points[0].tangent.trivial_multiplicity == 2);
  CHECK(euler_linear(kills.fixed_points[0].tangent).is_zero());

  CHECK_THROWS_AS(restrict_subtorus(s2, int_matrix(2, 1, {1, 1})), StructuralError);

  for (const auto& m : {point(1), point(2), circle_trivial(2), circle_free(), rema_adj(), s2_rotation(),
                        obstruction_pair(), c_alpha({1, 2})}) {
    INFO(m.name);
    const InvariantModel r = restrict_subtorus(m, IntMatrix(static_cast<Index>(m.torus_rank), 0));
    CHECK(validate_model(r).ok());
    CHECK(cohomology_hilbert(r, m.max_degree()) == ordinary_cohomology(m));
  }
}

TEST_CASE("restriction commutes with Gysin") {
  const auto sw = ptr(c_alpha({1, 2}));
  const auto pt2 = ptr(point(2));
  const std::vector<ModelMap> maps{identity_map(sw), constant_map(sw, pt2), fixed_point_inclusion(pt2, sw, 0),
                                   fixed_point_inclusion(pt2, sw, 1)};
  for (const auto& f : maps)
    for (const auto& a : {int_matrix(2, 1, {1, 1}), int_matrix(2, 1, {2, -1}), int_matrix(2, 2, {1, 0, 0, 1}),
                          int_matrix(2, 2, {1, 1, 0, 1})}) {
      INFO(f.name);
      CHECK(is_zero_matrix(restriction_gysin_residual(f, a)));
    }
  const auto s2 = ptr(s2_rotation());
  const auto pt = ptr(point(1));
  CHECK(is_zero_matrix(restriction_gysin_residual(fixed_point_inclusion(pt, s2, 0), int_matrix(1, 1, {2}))));
}
