#pragma once

#include "eqcoh/cartan.hpp"

#include <vector>

namespace eqcoh {

/// S(t)-linear extension of the top-degree integration functional: P (x) w -> P * int w.
/// Throws Unsupported for a non-compact model and StructuralError when a top-degree
/// generator has no declared integral.
Polynomial integrate(const InvariantModel& m, const EquivariantElement& x);

/// (i, j) -> integral of rep_i * rep_j over the generic cohomology basis.
FracMatrix pairing_matrix(const InvariantModel& m, const GenericCohomology& h);
FracMatrix pairing_matrix(const InvariantModel& m);

struct DualityReport {
  std::size_t pairing_rank = 0;
  std::size_t generic_betti_total = 0;
  bool perfect = false;
};

DualityReport duality_check(const InvariantModel& m);

/// Coordinates of rep_k * rep_l in the generic basis, for all k, l.
using StructureConstants = std::vector<std::vector<FracVector>>;
StructureConstants structure_constants(const InvariantModel& m, const GenericCohomology& h);
/// Product of two classes given by generic coordinates.
FracVector cup(const StructureConstants& mu, const FracVector& a, const FracVector& b);

/// Finitely presented graded module over Q[u] (deg u = 2): cokernel of `relations`,
/// whose rows are generators with the given degrees.
struct ModulePresentation {
  std::size_t torus_rank = 1;
  std::vector<int> generator_degrees;
  PolyMatrix relations;
};

/// H = sum Q[u][-a_i] + sum Q[u]/(p_j)[-b_j].
struct ModuleClassification {
  std::size_t free_rank = 0;
  std::vector<int> free_degrees;
  /// Monic, nonconstant.
  std::vector<Polynomial> elementary_divisors;
  /// Degree of the generator of each torsion summand.
  std::vector<int> torsion_degrees;
  bool is_free = false;
  bool is_torsion_free = false;
  bool is_reflexive = false;
  bool is_torsion = false;

  /// Dimensions of the degree-k parts, 0 <= k <= cutoff.
  std::vector<std::size_t> hilbert(int cutoff) const;
};

/// Over a principal ideal domain torsion-free, reflexive and free coincide.
void set_flags(ModuleClassification& c);

/// Graded decomposition of a homogeneous presentation.
ModuleClassification classify_presentation(const ModulePresentation& p);

/// Exact decomposition of H_T(m) for a rank-1 torus, from the Smith form of the Cartan
/// differential over Q[u].
ModuleClassification classify_rank1(const InvariantModel& m);

/// Presentation with one generator per summand and one relation per torsion summand.
ModulePresentation presentation_of(const ModuleClassification& c);

struct ExtReport {
  /// Hom(M, Q[u]): free of the same rank, generators in negated degrees.
  ModuleClassification ext0;
  std::vector<Polynomial> ext1_divisors;
  /// Ext^1(Q[u]/(u^m)[-b], Q[u]) = Q[u]/(u^m) generated in degree -(b + 2m).
  std::vector<int> ext1_degrees;
};

ExtReport ext_rank1(const ModulePresentation& p);

/// True when the localized cohomology vanishes.
bool is_torsion(const InvariantModel& m);

}  // namespace eqcoh
