// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "oracle.hpp"

#include "eqcoh/cartan.hpp"
#include "eqcoh/duality.hpp"
#include "eqcoh/errors.hpp"
#include "eqcoh/euler.hpp"
#include "eqcoh/gysin.hpp"
#include "eqcoh/models.hpp"
#include "eqcoh/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace eqcoh;
using Eigen::Index;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (cond || !ok) {
      ok = ok && cond;
      return;
    }
    ok = false;
    why << what;
  }
};

const Polynomial u = Polynomial::variable(0);

std::vector<InvariantModel> all_builtins() {
  return {point(1),           point(2),     circle_trivial(1), circle_trivial(2), circle_free(),
          rema_adj(),         s2_rotation(), obstruction_pair(), c_alpha({1}),      c_alpha({1, 2})};
}

IntMatrix int_matrix(Index rows, Index cols, std::initializer_list<std::int64_t> entries) {
  IntMatrix a(rows, cols);
  auto it = entries.begin();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = *it++;
  return a;
}

std::vector<std::size_t> even_ones(int cutoff) {
  std::vector<std::size_t> h(static_cast<std::size_t>(cutoff) + 1, 0);
  for (std::size_t k = 0; k < h.size(); k += 2) h[k] = 1;
  return h;
}

std::uint64_t seed() {
  if (const char* env = std::getenv("EQCOH_SEED")) return std::stoull(env);
  return kDefaultSeed;
}

void cartan_nilpotency(Check& c) {
  for (const auto& m : all_builtins())
    for (std::size_t i = 0; i < m.size(); ++i) {
      const EquivariantElement dx = cartan_differential(m, generator_element(m, i));
      c.require(is_zero_matrix(cartan_differential(m, dx)), m.name + ": d_T^2 != 0 on " + m.generators[i].name);
    }
}

void point_cohomology(Check& c) {
  const auto h = cohomology_hilbert(point(1), 20);
  c.require(h == even_ones(20), "point(1) Hilbert table differs from Q[u]");
  c.require(h == oracle::hilbert(point(1), 20), "point(1) disagrees with the slice oracle");
}

void free_action_collapse(Check& c) {
  const InvariantModel m = circle_free();
  const auto g = cohomology_generic(m);
  c.require(g.even_rank == 0 && g.odd_rank == 0, "generic Betti numbers are not (0,0)");
  std::vector<std::size_t> expect(11, 0);
  expect[0] = 1;
  c.require(cohomology_hilbert(m, 10) == expect, "Hilbert table is not [1,0,0,...]");
  c.require(oracle::hilbert(m, 10) == expect, "slice oracle disagrees");
  const auto cl = classify_rank1(m);
  c.require(cl.is_torsion && cl.free_rank == 0, "not classified as torsion");
  c.require(cl.elementary_divisors == std::vector<Polynomial>{u}, "elementary divisors are not (u)");
  const auto snf = smith_normal_form(presentation_of(cl).relations);
  c.require(snf.invariant_factors == std::vector<Polynomial>{u}, "SNF oracle disagrees");
}

void torsion_degeneration(Check& c) {
  c.require(is_torsion(rema_adj()), "rema_adj is not torsion");
  const InvariantModel r = restrict_subtorus(rema_adj(), int_matrix(2, 1, {0, 1}));
  c.require(is_torsion(r), "restricted rema_adj is not torsion");
  const auto ext = ext_rank1(presentation_of(classify_rank1(r)));
  c.require(ext.ext0.free_rank == 0, "dual Hom of the restricted module is nonzero");
}

void s2_freeness(Check& c) {
  const InvariantModel m = s2_rotation();
  const auto g = cohomology_generic(m);
  c.require(g.even_rank == 2 && g.odd_rank == 0, "generic Betti numbers are not (2,0)");
  const auto cl = classify_rank1(m);
  c.require(cl.is_free && cl.free_rank == 2, "module is not free of rank 2");
  c.require(cl.free_degrees == std::vector<int>{0, 2}, "free generators are not in degrees 0, 2");
  c.require(duality_check(m).perfect, "pairing is not perfect");
}

void localization_zero_sum(Check& c) {
  const InvariantModel m = s2_rotation();
  const auto r = localize_integral(m.fixed_points, "one");
  c.require(r.is_polynomial && r.value == RationalFunction(0), "localized integral of 1 is not 0");
}

void euler_characteristic(Check& c) {
  const InvariantModel m = s2_rotation();
  std::vector<Polynomial> euler;
  for (const auto& p : m.fixed_points) euler.push_back(euler_linear(p.tangent));
  const auto r = localize_values(m.fixed_points, euler);
  c.require(r.value == RationalFunction(2), "localized Euler characteristic is not 2");
  const std::vector<RationalMatrix> id{RationalMatrix::Identity(1, 1), RationalMatrix(0, 0),
                                       RationalMatrix::Identity(1, 1)};
  c.require(lefschetz_number(id) == Rational(2), "Lefschetz number of the identity is not 2");
}

void localization_consistency_check(Check& c) {
  for (const auto& m : {s2_rotation(), c_alpha({1, 2})}) {
    const auto rep = localization_consistency(m);
    c.require(rep.entries.size() == 2, m.name + ": expected two generic cocycles");
    for (const auto& e : rep.entries) c.require(e.residual.is_zero(), m.name + ": nonzero residual");
    c.require(rep.ok(), m.name + ": report not ok");
  }
}

std::vector<ModelMap> sample_maps(const ModelPtr& m) { return available_maps(m, {}); }

void gysin_adjunction(Check& c) {
  for (const auto& m : {s2_rotation(), c_alpha({1, 2})}) {
    const auto mp = std::make_shared<const InvariantModel>(m);
    for (const auto& f : sample_maps(mp)) {
      const auto x = gysin_localized(f);
      c.require(is_zero_matrix(adjunction_residual(f, x)), m.name + "/" + f.name + ": adjunction residual");
    }
  }
  const auto s2 = std::make_shared<const InvariantModel>(s2_rotation());
  const auto pt = std::make_shared<const InvariantModel>(point(1));
  for (std::size_t k = 0; k < s2->fixed_points.size(); ++k) {
    const ModelMap incl = fixed_point_inclusion(pt, s2, k);
    const ModelMap collapse = constant_map(s2, pt);
    const ModelMap loop = compose(collapse, incl);
    const auto composite = gysin_localized(loop).matrix;
    const auto chained = mul(gysin_localized(collapse).matrix, gysin_localized(incl).matrix);
    const FracMatrix one = FracMatrix::Identity(1, 1);
    c.require(same_matrix(composite, one), "Gysin of point -> S2 -> point is not the identity");
    c.require(same_matrix(chained, one), "product of Gysin matrices is not the identity");
    c.require(is_zero_matrix(adjunction_residual(loop, gysin_localized(loop))), "composite adjunction residual");
  }
}

void euler_closure(Check& c) {
  for (const auto& m : {s2_rotation(), c_alpha({1, 2})}) {
    const auto mp = std::make_shared<const InvariantModel>(m);
    const auto pt = std::make_shared<const InvariantModel>(point(m.torus_rank));
    for (std::size_t k = 0; k < m.fixed_points.size(); ++k) {
      const ModelMap incl = fixed_point_inclusion(pt, mp, k);
      const FracMatrix ii = mul(pullback_cohomology(incl), gysin_localized(incl).matrix);
      const RationalFunction expect(euler_linear(m.fixed_points[k].tangent));
      c.require(ii.rows() == 1 && ii.cols() == 1 && ii(0, 0) == expect,
                m.name + "/" + m.fixed_points[k].name + ": i*i_!(1) differs from the Euler class");
    }
  }
}

void projection_formula(Check& c) {
  for (const auto& m : {s2_rotation(), c_alpha({1, 2})}) {
    const auto mp = std::make_shared<const InvariantModel>(m);
    const auto pt = std::make_shared<const InvariantModel>(point(m.torus_rank));
    std::vector<ModelMap> maps{identity_map(mp), constant_map(mp, pt)};
    for (std::size_t k = 0; k < m.fixed_points.size(); ++k) maps.push_back(fixed_point_inclusion(pt, mp, k));
    for (const auto& f : maps) {
      const auto samples = default_projection_samples(f);
      c.require(!samples.empty(), f.name + ": no samples");
      for (const auto& r : projection_formula_check(f, samples))
        c.require(is_zero_matrix(r), m.name + "/" + f.name + ": nonzero projection residual");
    }
  }
}

void thom_extension(Check& c) {
  const InvariantModel m = s2_rotation();
  RationalVector vol = RationalVector::Zero(static_cast<Index>(m.size()));
  vol(static_cast<Index>(*m.index_of("vol"))) = 1;
  const EquivariantElement phi = thom_extend(m, vol);
  c.require(is_zero_matrix(cartan_differential(m, phi)), "extension is not a Cartan cocycle");
  const auto g = cohomology_generic(m);
  bool matches = false;
  for (const auto& rep : g.representatives) {
    if (total_degree(m, rep) != total_degree(m, phi)) continue;
    const EquivariantElement diff = phi - rep;
    if (is_zero_matrix(diff) || is_coboundary(m, diff)) matches = true;
  }
  c.require(matches, "extension is not cohomologous to a stored representative");

  const InvariantModel ob = obstruction_pair();
  RationalVector a = RationalVector::Zero(static_cast<Index>(ob.size()));
  a(0) = 1;
  try {
    thom_extend(ob, a);
    c.require(false, "obstruction_pair extended without obstruction");
  } catch (const ObstructionError& e) {
    c.require(e.form_degree() == -1, "obstruction reported in the wrong form degree");
  }
}

void snf_contract(Check& c) {
  std::mt19937_64 rng(seed());
  for (int trial = 0; trial < 200; ++trial) {
    const PolyMatrix a = oracle::random_poly_matrix(rng, 4, 4, 1, 3, 0.3);
    const SmithForm s = smith_normal_form(a);
    const std::string tag = "trial " + std::to_string(trial) + ": ";
    c.require(same_matrix(mul(mul(s.U, a), s.V), s.D), tag + "U*A*V != D");
    const Polynomial du = oracle::leibniz_det(s.U);
    const Polynomial dv = oracle::leibniz_det(s.V);
    c.require(du.is_constant() && !du.is_zero() && dv.is_constant() && !dv.is_zero(), tag + "not unimodular");
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j)
        if (i != j) c.require(s.D(i, j).is_zero(), tag + "D not diagonal");
    const auto& f = s.invariant_factors;
    for (std::size_t k = 0; k < f.size(); ++k) {
      c.require(s.D(static_cast<Index>(k), static_cast<Index>(k)) == f[k], tag + "diagonal differs from factors");
      if (k + 1 < f.size()) c.require(divide_exact(f[k + 1], f[k]).has_value(), tag + "divisibility chain broken");
    }
    for (auto k = static_cast<Index>(f.size()); k < 4; ++k) c.require(s.D(k, k).is_zero(), tag + "trailing entry");
    c.require(oracle::leibniz_det(a).is_zero() == (f.size() < 4), tag + "rank disagrees with determinant");
  }
}

void rank1_decomposition(Check& c) {
  for (const auto& m : all_builtins()) {
    if (m.torus_rank != 1) continue;
    const int cutoff = std::max(default_cutoff(m), 12);
    const auto cl = classify_rank1(m);
    c.require(cl.hilbert(cutoff) == cohomology_hilbert(m, cutoff), m.name + ": classification Hilbert mismatch");
    const auto ext = ext_rank1(presentation_of(cl));
    c.require(ext.ext0.free_rank == cl.free_rank, m.name + ": Hom-dual rank differs from free rank");
    std::vector<int> dual;
    for (int d : cl.free_degrees) dual.push_back(-d);
    std::sort(dual.begin(), dual.end());
    auto ext0 = ext.ext0.free_degrees;
    std::sort(ext0.begin(), ext0.end());
    c.require(ext0 == dual, m.name + ": Hom-dual degrees are not the negated free degrees");
    c.require(ext.ext1_divisors == cl.elementary_divisors, m.name + ": Ext^1 divisors differ from torsion divisors");
    for (std::size_t k = 0; k < cl.torsion_degrees.size() && k < ext.ext1_degrees.size(); ++k)
      c.require(ext.ext1_degrees[k] == -cl.torsion_degrees[k] - 2 * cl.elementary_divisors[k].degree(),
                m.name + ": Ext^1 degree shift");
  }
}

void restriction_compatibility(Check& c) {
  for (const auto& m : all_builtins()) {
    const InvariantModel r = restrict_subtorus(m, IntMatrix(static_cast<Index>(m.torus_rank), 0));
    c.require(r.torus_rank == 0 && validate_model(r).ok(), m.name + ": invalid rank-0 restriction");
    c.require(cohomology_hilbert(r, m.max_degree()) == ordinary_cohomology(m), m.name + ": ordinary dims differ");
  }
  const InvariantModel ra = restrict_subtorus(rema_adj(), int_matrix(2, 1, {0, 1}));
  const InvariantModel cf = circle_free();
  c.require(ra.torus_rank == 1 && ra.generators == cf.generators, "restricted rema_adj has the wrong shape");
  c.require(same_matrix(ra.d, cf.d) && same_matrix(ra.contractions[0], cf.contractions[0]),
            "restricted rema_adj differs from circle_free");
  c.require(cohomology_hilbert(ra, 10) == cohomology_hilbert(cf, 10), "Hilbert tables differ");

  const auto sw = std::make_shared<const InvariantModel>(c_alpha({1, 2}));
  const auto pt2 = std::make_shared<const InvariantModel>(point(2));
  std::vector<ModelMap> maps{identity_map(sw), constant_map(sw, pt2)};
  for (std::size_t k = 0; k < sw->fixed_points.size(); ++k) maps.push_back(fixed_point_inclusion(pt2, sw, k));
  for (const auto& f : maps)
    for (const auto& a : {int_matrix(2, 1, {1, 1}), int_matrix(2, 1, {2, -1}), int_matrix(2, 2, {1, 1, 0, 1})})
      c.require(is_zero_matrix(restriction_gysin_residual(f, a)), f.name + ": restriction does not commute");
  const auto s2 = std::make_shared<const InvariantModel>(s2_rotation());
  const auto pt = std::make_shared<const InvariantModel>(point(1));
  for (const auto& f : sample_maps(s2)) {
    if (f.source != s2 && f.target != s2) continue;
    c.require(is_zero_matrix(restriction_gysin_residual(f, int_matrix(1, 1, {2}))), f.name + ": s2 doubling");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"Cartan nilpotency on every builtin", cartan_nilpotency},
      {"point cohomology is Q[u]", point_cohomology},
      {"free circle action collapses to torsion (u)", free_action_collapse},
      {"torsion duality degenerates for rema_adj", torsion_degeneration},
      {"S2 rotation is free with perfect duality", s2_freeness},
      {"localization of 1 on S2 is zero", localization_zero_sum},
      {"Euler characteristic via localization and Lefschetz", euler_characteristic},
      {"localization agrees with integration", localization_consistency_check},
      {"Gysin adjunction and functoriality", gysin_adjunction},
      {"i*i_!(1) is the Euler class", euler_closure},
      {"projection formula", projection_formula},
      {"Thom extension and obstruction", thom_extension},
      {"Smith normal form contract on 200 random 4x4 matrices", snf_contract},
      {"rank-1 duality decomposition", rank1_decomposition},
      {"subtorus restriction compatibility", restriction_compatibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!c.ok) {
      std::cout << " (" << c.why.str() << ")";
      ++failed;
    }
    std::cout << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
