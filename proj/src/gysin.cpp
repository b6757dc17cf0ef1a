#include "eqcoh/gysin.hpp"

#include "eqcoh/errors.hpp"

#include <set>

namespace eqcoh {

using Eigen::Index;

ValidationReport validate_map(const ModelMap& f) {
  if (!f.source || !f.target) throw StructuralError("map '" + f.name + "' is missing a model");
  const InvariantModel& s = *f.source;
  const InvariantModel& t = *f.target;
  if (s.torus_rank != t.torus_rank)
    throw StructuralError("map '" + f.name + "' joins models of torus rank " + std::to_string(s.torus_rank) + " and " +
                          std::to_string(t.torus_rank));
  if (f.pullback.rows() != static_cast<Index>(s.size()) || f.pullback.cols() != static_cast<Index>(t.size()))
    throw StructuralError("pullback of '" + f.name + "' is " + std::to_string(f.pullback.rows()) + "x" +
                          std::to_string(f.pullback.cols()) + ", expected " + std::to_string(s.size()) + "x" +
                          std::to_string(t.size()));

  ValidationReport report;
  auto add = [&](std::string axiom, Index j, std::string witness) {
    report.violations.push_back({std::move(axiom), {t.generators[j].name}, std::move(witness)});
  };
  for (Index j = 0; j < f.pullback.cols(); ++j)
    for (Index i = 0; i < f.pullback.rows(); ++i)
      if (f.pullback(i, j) != 0 && s.generators[i].degree != t.generators[j].degree)
        add("deg(f*) ≠ 0", j,
            "f*(" + t.generators[j].name + ") has a component on " + s.generators[i].name + " (degree " +
                std::to_string(s.generators[i].degree) + " vs " + std::to_string(t.generators[j].degree) + ")");

  auto commute = [&](const RationalMatrix& op_s, const RationalMatrix& op_t, const std::string& axiom,
                     const std::string& label) {
    const RationalMatrix r = mul(f.pullback, op_t) - mul(op_s, f.pullback);
    for (Index j = 0; j < r.cols(); ++j)
      if (!is_zero_matrix(r.col(j)))
        add(axiom, j, "(" + label + ")(" + t.generators[j].name + ") = " + format_vector(s, r.col(j)));
  };
  commute(s.d, t.d, "f*∘d ≠ d∘f*", "f*∘d - d∘f*");
  for (std::size_t k = 0; k < s.contractions.size(); ++k) {
    const std::string i = std::to_string(k + 1);
    commute(s.contractions[k], t.contractions[k], "f*∘c ≠ c∘f*", "f*∘c_" + i + " - c_" + i + "∘f*");
  }
  return report;
}

ModelMap identity_map(const ModelPtr& m) {
  return {"id", m, m, RationalMatrix::Identity(static_cast<Index>(m->size()), static_cast<Index>(m->size())), true};
}

ModelMap constant_map(const ModelPtr& m, const ModelPtr& point) {
  auto it = m->classes.find("one");
  if (it == m->classes.end()) throw DataError("model '" + m->name + "' declares no unit class 'one'");
  RationalMatrix F(static_cast<Index>(m->size()), 1);
  for (Index i = 0; i < F.rows(); ++i) {
    if (!it->second(i).is_constant()) throw DataError("class 'one' of '" + m->name + "' is not a constant form");
    F(i, 0) = it->second(i).constant_term();
  }
  return {"collapse", m, point, F, m->compact};
}

ModelMap fixed_point_inclusion(const ModelPtr& point, const ModelPtr& m, std::size_t fixed_point) {
  const FixedPointDatum& p = m->fixed_points.at(fixed_point);
  if (!p.evaluation) throw DataError("fixed point '" + p.name + "' has no evaluation data");
  return {"incl_" + p.name, point, m, RationalMatrix(p.evaluation->transpose()), true};
}

ModelMap compose(const ModelMap& g, const ModelMap& f) {
  if (f.target != g.source && !(f.target && g.source && *f.target == *g.source))
    throw StructuralError("cannot compose '" + g.name + "' after '" + f.name + "'");
  return {g.name + "∘" + f.name, f.source, g.target, mul(f.pullback, g.pullback), f.proper && g.proper};
}

namespace {

EquivariantElement apply_pullback(const RationalMatrix& F, const EquivariantElement& z) {
  return mul(cast_exact<Polynomial>(F), z);
}

}  // namespace

FracMatrix pullback_cohomology(const ModelMap& f) {
  const GenericCohomology hs = cohomology_generic(*f.source);
  const GenericCohomology ht = cohomology_generic(*f.target);
  FracMatrix out(static_cast<Index>(hs.total()), static_cast<Index>(ht.total()));
  for (std::size_t j = 0; j < ht.representatives.size(); ++j)
    out.col(static_cast<Index>(j)) =
        generic_coordinates(*f.source, hs, apply_pullback(f.pullback, ht.representatives[j]));
  return out;
}

AdjunctionData adjunction_data(const ModelMap& f) {
  AdjunctionData a;
  a.pullback = pullback_cohomology(f);
  a.source_pairing = pairing_matrix(*f.source);
  a.target_pairing = pairing_matrix(*f.target);
  return a;
}

GysinMatrix gysin_localized(const ModelMap& f) {
  for (const auto* m : {f.source.get(), f.target.get()}) {
    if (!m->compact) throw Unsupported("Gysin morphism needs compact models; '" + m->name + "' is not compact");
    const DualityReport d = duality_check(*m);
    if (!d.perfect)
      throw InternalInconsistency("model defect: pairing of '" + m->name + "' has rank " +
                                  std::to_string(d.pairing_rank) + " on " + std::to_string(d.generic_betti_total) +
                                  " generic classes");
  }
  const AdjunctionData a = adjunction_data(f);
  const FracMatrix rhs = mul(a.pullback.transpose(), a.source_pairing);
  auto x = solve(a.target_pairing, rhs);
  if (!x) throw InternalInconsistency("adjunction system is inconsistent for '" + f.name + "'");
  return {std::move(*x), f.source->top_degree - f.target->top_degree};
}

FracMatrix adjunction_residual(const ModelMap& f, const GysinMatrix& x) {
  const AdjunctionData a = adjunction_data(f);
  return mul(a.pullback.transpose(), a.source_pairing) - mul(a.target_pairing, x.matrix);
}

std::vector<ProjectionSample> default_projection_samples(const ModelMap& f) {
  const Index nt = static_cast<Index>(cohomology_generic(*f.target).total());
  const Index ns = static_cast<Index>(cohomology_generic(*f.source).total());
  std::vector<ProjectionSample> samples;
  for (Index i = 0; i < nt; ++i)
    for (Index j = 0; j < ns; ++j) {
      ProjectionSample s{FracVector::Zero(nt), FracVector::Zero(ns)};
      s.alpha(i) = 1;
      s.beta(j) = 1;
      samples.push_back(std::move(s));
    }
  if (!samples.empty() && f.target->torus_rank >= 1) {
    ProjectionSample s = samples.front();
    s.alpha *= RationalFunction(Polynomial::variable(0));
    samples.push_back(std::move(s));
  }
  return samples;
}

std::vector<FracVector> projection_formula_check(const ModelMap& f, const std::vector<ProjectionSample>& samples) {
  const GenericCohomology hs = cohomology_generic(*f.source);
  const GenericCohomology ht = cohomology_generic(*f.target);
  const StructureConstants mu_s = structure_constants(*f.source, hs);
  const StructureConstants mu_t = structure_constants(*f.target, ht);
  const FracMatrix F = pullback_cohomology(f);
  const FracMatrix X = gysin_localized(f).matrix;
  std::vector<FracVector> residuals;
  for (const auto& s : samples) {
    const FracVector pulled = mul(F, s.alpha);
    const FracVector lhs = mul(X, cup(mu_s, pulled, s.beta));
    const FracVector pushed = mul(X, s.beta);
    const FracVector rhs = cup(mu_t, s.alpha, pushed);
    residuals.push_back(lhs - rhs);
  }
  return residuals;
}

EquivariantElement thom_extend(const InvariantModel& m, const RationalVector& phi_top) {
  const Index n = static_cast<Index>(m.size());
  if (phi_top.size() != n) throw StructuralError("form does not belong to model '" + m.name + "'");
  std::optional<int> k;
  for (Index g = 0; g < n; ++g) {
    if (phi_top(g) == 0) continue;
    if (k && *k != m.generators[g].degree) throw StructuralError("thom_extend expects a homogeneous form");
    k = m.generators[g].degree;
  }
  EquivariantElement phi = EquivariantElement::Zero(n);
  if (!k) return phi;
  if (!is_zero_matrix(mul(m.d, phi_top))) throw StructuralError("thom_extend expects a d-closed form");

  std::vector<std::vector<Index>> by_degree(static_cast<std::size_t>(m.max_degree()) + 2);
  for (Index g = 0; g < n; ++g) by_degree[m.generators[g].degree].push_back(g);

  std::map<Exponent, RationalVector> level{{Exponent{}, phi_top}};
  for (int j = 1; !level.empty(); ++j) {
    for (const auto& [mono, x] : level)
      for (Index g = 0; g < n; ++g)
        if (x(g) != 0) phi(g) += Polynomial::monomial(mono, x(g));

    std::map<Exponent, RationalVector> rhs;
    for (const auto& [mono, x] : level)
      for (std::size_t v = 0; v < m.contractions.size(); ++v) {
        const RationalVector cx = mul(m.contractions[v], x);
        if (is_zero_matrix(cx)) continue;
        Exponent up = mono;
        if (up.size() <= v) up.resize(v + 1, 0);
        up[v] += 1;
        auto [it, inserted] = rhs.try_emplace(up, RationalVector::Zero(n));
        it->second -= cx;
      }
    std::erase_if(rhs, [](const auto& kv) { return is_zero_matrix(kv.second); });
    if (rhs.empty()) break;

    const int form_degree = *k - 2 * j;
    if (form_degree < 0)
      throw ObstructionError(form_degree, "equivariant extension obstructed at form degree " +
                                              std::to_string(form_degree) + ": the contraction of the degree-" +
                                              std::to_string(form_degree + 2) + " component is nonzero and cannot be exact");
    const auto& cols = by_degree[form_degree];
    const auto& rows = by_degree[form_degree + 1];
    const RationalMatrix dsub = m.d(rows, cols);
    std::map<Exponent, RationalVector> next;
    for (const auto& [mono, r] : rhs) {
      const auto s = rank_and_solve(dsub, RationalVector(r(rows)));
      if (!s.consistent)
        throw ObstructionError(form_degree, "equivariant extension obstructed at form degree " +
                                                std::to_string(form_degree) + ": a contraction image in degree " +
                                                std::to_string(form_degree + 1) + " is not d-exact");
      RationalVector full = RationalVector::Zero(n);
      full(cols) = *s.solution;
      next.emplace(mono, std::move(full));
    }
    level = std::move(next);
  }
  if (!is_zero_matrix(cartan_differential(m, phi)))
    throw InternalInconsistency("thom_extend produced a non-cocycle");
  return phi;
}

std::vector<Polynomial> restriction_images(const IntMatrix& a) {
  std::vector<Polynomial> images;
  for (Index i = 0; i < a.rows(); ++i) {
    Polynomial p;
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) p += Polynomial::variable(static_cast<std::size_t>(j)) * Rational(a(i, j));
    images.push_back(std::move(p));
  }
  return images;
}

Polynomial restrict_polynomial(const Polynomial& p, const IntMatrix& a) { return p.substitute(restriction_images(a)); }

EquivariantElement restrict_element(const EquivariantElement& x, const IntMatrix& a) {
  const auto images = restriction_images(a);
  EquivariantElement r(x.size());
  for (Index i = 0; i < x.size(); ++i) r(i) = x(i).substitute(images);
  return r;
}

LinearRepresentation restrict_representation(const LinearRepresentation& rep, const IntMatrix& a) {
  LinearRepresentation r;
  r.trivial_multiplicity = rep.trivial_multiplicity;
  for (const auto& [w, mult] : rep.weighted) {
    Weight b;
    b.coeffs.assign(static_cast<std::size_t>(a.cols()), 0);
    for (Index j = 0; j < a.cols(); ++j)
      for (Index i = 0; i < a.rows() && i < static_cast<Index>(w.coeffs.size()); ++i) b.coeffs[j] += w.coeffs[i] * a(i, j);
    if (b.is_zero()) {
      r.trivial_multiplicity += 2 * mult;
    } else {
      r.weighted.emplace_back(std::move(b), mult);
    }
  }
  return r;
}

InvariantModel restrict_subtorus(const InvariantModel& m, const IntMatrix& a) {
  if (a.rows() != static_cast<Index>(m.torus_rank))
    throw StructuralError("restriction matrix has " + std::to_string(a.rows()) + " rows for torus rank " +
                          std::to_string(m.torus_rank));
  InvariantModel r = m;
  r.name = m.name + "|restricted";
  r.torus_rank = static_cast<std::size_t>(a.cols());
  r.contractions.clear();
  const Index n = static_cast<Index>(m.size());
  for (Index j = 0; j < a.cols(); ++j) {
    RationalMatrix c = RationalMatrix::Zero(n, n);
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0) c += m.contractions[i] * Rational(a(i, j));
    r.contractions.push_back(std::move(c));
  }
  for (auto& [name, x] : r.classes) x = restrict_element(x, a);
  for (auto& p : r.fixed_points) {
    p.tangent = restrict_representation(p.tangent, a);
    for (auto& [name, value] : p.restrictions) value = restrict_polynomial(value, a);
  }
  return r;
}

ModelMap restrict_map(const ModelMap& f, const IntMatrix& a) {
  auto source = std::make_shared<const InvariantModel>(restrict_subtorus(*f.source, a));
  auto target = f.target == f.source ? source : std::make_shared<const InvariantModel>(restrict_subtorus(*f.target, a));
  return {f.name + "|restricted", source, target, f.pullback, f.proper};
}

namespace {

RationalFunction restrict_fraction(const RationalFunction& q, const IntMatrix& a) {
  const Polynomial den = restrict_polynomial(q.denominator(), a);
  if (den.is_zero()) throw DataError("restriction sends a denominator to zero");
  return RationalFunction(restrict_polynomial(q.numerator(), a), den);
}

/// Coordinates of the restricted representatives of m in the basis of the restricted model.
FracMatrix basis_change(const InvariantModel& m, const InvariantModel& restricted, const IntMatrix& a) {
  const GenericCohomology h = cohomology_generic(m);
  const GenericCohomology hr = cohomology_generic(restricted);
  FracMatrix c(static_cast<Index>(hr.total()), static_cast<Index>(h.total()));
  for (std::size_t j = 0; j < h.representatives.size(); ++j)
    c.col(static_cast<Index>(j)) = generic_coordinates(restricted, hr, restrict_element(h.representatives[j], a));
  return c;
}

}  // namespace

FracMatrix restriction_gysin_residual(const ModelMap& f, const IntMatrix& a) {
  const GysinMatrix x = gysin_localized(f);
  FracMatrix rx(x.matrix.rows(), x.matrix.cols());
  for (Index j = 0; j < rx.cols(); ++j)
    for (Index i = 0; i < rx.rows(); ++i) rx(i, j) = restrict_fraction(x.matrix(i, j), a);
  const ModelMap fr = restrict_map(f, a);
  const GysinMatrix xr = gysin_localized(fr);
  const FracMatrix cs = basis_change(*f.source, *fr.source, a);
  const FracMatrix ct = basis_change(*f.target, *fr.target, a);
  return mul(ct, rx) - mul(xr.matrix, cs);
}

}  // namespace eqcoh
