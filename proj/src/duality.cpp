#include "eqcoh/duality.hpp"

#include "eqcoh/errors.hpp"
#include "eqcoh/smith.hpp"

#include <algorithm>

namespace eqcoh {

using Eigen::Index;

Polynomial integrate(const InvariantModel& m, const EquivariantElement& x) {
  if (!m.compact) throw Unsupported("integration requires a compact model; '" + m.name + "' is not compact");
  check_element(m, x);
  Polynomial r;
  for (std::size_t g = 0; g < m.size(); ++g) {
    if (m.generators[g].degree != m.top_degree) continue;
    const Polynomial& coeff = x(static_cast<Index>(g));
    if (coeff.is_zero()) continue;
    auto it = m.integration.find(g);
    if (it == m.integration.end())
      throw StructuralError("no integral declared for top-degree generator " + m.generators[g].name);
    r += coeff * it->second;
  }
  return r;
}

FracMatrix pairing_matrix(const InvariantModel& m, const GenericCohomology& h) {
  if (!m.compact) throw Unsupported("pairing requires a compact model; '" + m.name + "' is not compact");
  const Index r = static_cast<Index>(h.representatives.size());
  FracMatrix P(r, r);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j)
      P(i, j) = integrate(m, multiply(m, h.representatives[i], h.representatives[j]));
  return P;
}

FracMatrix pairing_matrix(const InvariantModel& m) { return pairing_matrix(m, cohomology_generic(m)); }

DualityReport duality_check(const InvariantModel& m) {
  const GenericCohomology h = cohomology_generic(m);
  DualityReport r;
  r.generic_betti_total = h.total();
  r.pairing_rank = rank_and_solve(pairing_matrix(m, h)).rank;
  r.perfect = r.pairing_rank == r.generic_betti_total;
  return r;
}

StructureConstants structure_constants(const InvariantModel& m, const GenericCohomology& h) {
  const std::size_t r = h.representatives.size();
  StructureConstants mu(r, std::vector<FracVector>(r));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l)
      mu[k][l] = generic_coordinates(m, h, multiply(m, h.representatives[k], h.representatives[l]));
  return mu;
}

FracVector cup(const StructureConstants& mu, const FracVector& a, const FracVector& b) {
  const Index r = static_cast<Index>(mu.size());
  if (a.size() != r || b.size() != r) throw StructuralError("cup: coordinate length mismatch");
  FracVector out = FracVector::Zero(r);
  for (Index k = 0; k < r; ++k) {
    if (a(k).is_zero()) continue;
    for (Index l = 0; l < r; ++l) {
      if (b(l).is_zero()) continue;
      const RationalFunction s = a(k) * b(l);
      for (Index i = 0; i < r; ++i)
        if (!mu[k][l](i).is_zero()) out(i) += s * mu[k][l](i);
    }
  }
  return out;
}

std::vector<std::size_t> ModuleClassification::hilbert(int cutoff) const {
  std::vector<std::size_t> h(static_cast<std::size_t>(std::max(cutoff, -1) + 1), 0);
  for (int a : free_degrees)
    for (int k = std::max(a, 0); k <= cutoff; ++k)
      if ((k - a) % 2 == 0) ++h[k];
  for (std::size_t j = 0; j < elementary_divisors.size(); ++j) {
    const int b = torsion_degrees[j];
    const int len = elementary_divisors[j].degree();
    for (int s = 0; s < len; ++s) {
      const int k = b + 2 * s;
      if (k >= 0 && k <= cutoff) ++h[k];
    }
  }
  return h;
}

void set_flags(ModuleClassification& c) {
  c.is_free = c.elementary_divisors.empty();
  c.is_reflexive = c.is_free;
  c.is_torsion_free = c.is_free;
  c.is_torsion = c.free_rank == 0;
}

namespace {

void require_rank1(std::size_t rank, const char* what) {
  if (rank != 1) throw UnsupportedRank(std::string(what) + " requires torus rank 1, got " + std::to_string(rank));
}

/// Cohomological degree of a homogeneous univariate polynomial.
int cdeg(const Polynomial& p) { return 2 * p.degree(); }

}  // namespace

ModuleClassification classify_presentation(const ModulePresentation& p) {
  require_rank1(p.torus_rank, "module decomposition");
  const Index rows = p.relations.rows();
  if (rows != static_cast<Index>(p.generator_degrees.size()))
    throw StructuralError("presentation has " + std::to_string(rows) + " relation rows for " +
                          std::to_string(p.generator_degrees.size()) + " generators");
  for (Index j = 0; j < p.relations.cols(); ++j) {
    std::optional<int> deg;
    for (Index i = 0; i < rows; ++i) {
      const Polynomial& e = p.relations(i, j);
      if (e.is_zero()) continue;
      if (!e.is_homogeneous()) throw StructuralError("relation column " + std::to_string(j) + " is not homogeneous");
      const int d = p.generator_degrees[i] + cdeg(e);
      if (deg && *deg != d) throw StructuralError("relation column " + std::to_string(j) + " is not homogeneous");
      deg = d;
    }
  }

  const SmithForm s = smith_normal_form(p.relations);
  if (!s.permutation_only) throw InternalInconsistency("Smith form of a homogeneous presentation left the graded path");
  ModuleClassification c;
  const Index r = static_cast<Index>(s.invariant_factors.size());
  for (Index t = 0; t < rows; ++t) {
    const int degree = p.generator_degrees[s.row_order[t]];
    if (t >= r) {
      c.free_degrees.push_back(degree);
    } else if (s.invariant_factors[t].degree() > 0) {
      c.elementary_divisors.push_back(s.invariant_factors[t]);
      c.torsion_degrees.push_back(degree);
    }
  }
  c.free_rank = c.free_degrees.size();
  std::sort(c.free_degrees.begin(), c.free_degrees.end());
  set_flags(c);
  return c;
}

ModuleClassification classify_rank1(const InvariantModel& m) {
  require_rank1(m.torus_rank, "classify_rank1");
  const PolyMatrix D = cartan_matrix(m);
  const SmithForm s = smith_normal_form(D);
  if (!s.permutation_only) throw InternalInconsistency("Smith form of the Cartan differential left the graded path");
  const Index n = static_cast<Index>(m.size());
  const Index r = static_cast<Index>(s.invariant_factors.size());
  auto deg = [&](Index g) { return m.generators[g].degree; };

  ModuleClassification c;
  // ker d_T is free on V e_j (j >= r); the saturation of im d_T is free on U^{-1} e_t (t < r),
  // and the quotient of the two is the free part.
  std::vector<int> kernel_degrees, image_degrees;
  for (Index j = r; j < n; ++j) kernel_degrees.push_back(deg(s.col_order[j]));
  for (Index t = 0; t < r; ++t) {
    image_degrees.push_back(deg(s.row_order[t]));
    if (s.invariant_factors[t].degree() > 0) {
      c.elementary_divisors.push_back(s.invariant_factors[t]);
      c.torsion_degrees.push_back(deg(s.row_order[t]));
    }
  }
  std::sort(kernel_degrees.begin(), kernel_degrees.end());
  std::sort(image_degrees.begin(), image_degrees.end());
  if (!std::includes(kernel_degrees.begin(), kernel_degrees.end(), image_degrees.begin(), image_degrees.end()))
    throw InternalInconsistency("image generators do not fit inside the kernel degrees");
  std::set_difference(kernel_degrees.begin(), kernel_degrees.end(), image_degrees.begin(), image_degrees.end(),
                      std::back_inserter(c.free_degrees));
  c.free_rank = c.free_degrees.size();
  set_flags(c);
  return c;
}

ModulePresentation presentation_of(const ModuleClassification& c) {
  ModulePresentation p;
  p.generator_degrees = c.free_degrees;
  p.generator_degrees.insert(p.generator_degrees.end(), c.torsion_degrees.begin(), c.torsion_degrees.end());
  const Index rows = static_cast<Index>(p.generator_degrees.size());
  const Index rels = static_cast<Index>(c.elementary_divisors.size());
  p.relations = PolyMatrix::Zero(rows, rels);
  for (Index j = 0; j < rels; ++j) p.relations(static_cast<Index>(c.free_rank) + j, j) = c.elementary_divisors[j];
  return p;
}

ExtReport ext_rank1(const ModulePresentation& p) {
  const ModuleClassification c = classify_presentation(p);
  ExtReport e;
  e.ext0.free_rank = c.free_rank;
  for (auto it = c.free_degrees.rbegin(); it != c.free_degrees.rend(); ++it) e.ext0.free_degrees.push_back(-*it);
  set_flags(e.ext0);
  e.ext1_divisors = c.elementary_divisors;
  for (std::size_t j = 0; j < c.elementary_divisors.size(); ++j)
    e.ext1_degrees.push_back(-(c.torsion_degrees[j] + cdeg(c.elementary_divisors[j])));
  return e;
}

bool is_torsion(const InvariantModel& m) { return cohomology_generic(m).total() == 0; }

}  // namespace eqcoh
