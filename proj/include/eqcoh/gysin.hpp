#pragma once

#include "eqcoh/duality.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace eqcoh {

using ModelPtr = std::shared_ptr<const InvariantModel>;

/// An equivariant map f: source -> target, given by its pullback on forms.
/// `pullback` has one row per source generator and one column per target generator.
struct ModelMap {
  std::string name;
  ModelPtr source;
  ModelPtr target;
  RationalMatrix pullback;
  bool proper = true;
};

/// Checks that f* preserves degrees and commutes with d and every c_i.
ValidationReport validate_map(const ModelMap& f);

ModelMap identity_map(const ModelPtr& m);
/// Collapse m -> point(n); needs m's class "one" to be a constant unit.
ModelMap constant_map(const ModelPtr& m, const ModelPtr& point);
/// Inclusion of a fixed point with evaluation data: point(n) -> m.
ModelMap fixed_point_inclusion(const ModelPtr& point, const ModelPtr& m, std::size_t fixed_point);
/// g o f, for f: M -> N and g: N -> P.
ModelMap compose(const ModelMap& g, const ModelMap& f);

/// f* between generic cohomology bases: column j holds the source coordinates of f*(target rep j).
FracMatrix pullback_cohomology(const ModelMap& f);

/// f_* between generic cohomology bases (target rows, source columns). The degree shift
/// d_source - d_target is kept as a tag; no shift sign is folded into the matrix.
struct GysinMatrix {
  FracMatrix matrix;
  int degree_shift = 0;
};

/// The unique X with <f* a_i, b_j>_source = <a_i, X b_j>_target for all basis pairs.
GysinMatrix gysin_localized(const ModelMap& f);

/// Fraction-field ingredients of the adjunction identity for one map.
struct AdjunctionData {
  FracMatrix pullback;        // F
  FracMatrix source_pairing;  // P_M
  FracMatrix target_pairing;  // P_N
};
AdjunctionData adjunction_data(const ModelMap& f);

/// F^T P_M - P_N X, recomputed from scratch; zero iff X satisfies the adjunction.
FracMatrix adjunction_residual(const ModelMap& f, const GysinMatrix& x);

/// One projection-formula sample: alpha in the target basis, beta in the source basis.
struct ProjectionSample {
  FracVector alpha;
  FracVector beta;
};

/// All pairs of basis vectors, plus the first pair scaled by u_1 when the torus has rank >= 1.
std::vector<ProjectionSample> default_projection_samples(const ModelMap& f);

/// f_*(f* alpha . beta) - alpha . f_* beta in the target basis, per sample.
std::vector<FracVector> projection_formula_check(const ModelMap& f, const std::vector<ProjectionSample>& samples);

/// Extends a d-closed homogeneous form to a Cartan cocycle phi + phi[k-2] + ..., solving
/// d x = -sum_i u_i c_i(previous) monomial by monomial. Throws ObstructionError naming the
/// form degree where the right-hand side is not exact.
EquivariantElement thom_extend(const InvariantModel& m, const RationalVector& phi_top);

/// Integer matrix A (n x r) describing a subtorus: u_i -> sum_j A_ij v_j.
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Images of the variables u_i under the restriction.
std::vector<Polynomial> restriction_images(const IntMatrix& a);
Polynomial restrict_polynomial(const Polynomial& p, const IntMatrix& a);
EquivariantElement restrict_element(const EquivariantElement& x, const IntMatrix& a);
LinearRepresentation restrict_representation(const LinearRepresentation& rep, const IntMatrix& a);

/// Contractions c'_j = sum_i A_ij c_i; classes, weights and restrictions transported by
/// substitution. r = 0 gives the underlying nonequivariant complex.
InvariantModel restrict_subtorus(const InvariantModel& m, const IntMatrix& a);
ModelMap restrict_map(const ModelMap& f, const IntMatrix& a);

/// Group restriction against Gysin: C_target * rho(X) - X' * C_source, where rho
/// substitutes along A, X' is the Gysin matrix of the restricted map, and C_* express
/// the restricted original bases in the bases computed for the restricted models.
FracMatrix restriction_gysin_residual(const ModelMap& f, const IntMatrix& a);

}  // namespace eqcoh
