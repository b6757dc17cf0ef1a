#pragma once

#include "eqcoh/linalg.hpp"
#include "eqcoh/model.hpp"

#include <cstdint>
#include <vector>

namespace eqcoh {

/// d_T = 1 (x) d + sum_i u_i (x) c_i as a matrix over S(t) acting on generator coordinates.
PolyMatrix cartan_matrix(const InvariantModel& m);

/// d_T(P (x) w) = P (x) dw + sum_i u_i P (x) c_i w.
EquivariantElement cartan_differential(const InvariantModel& m, const EquivariantElement& x);

/// Q-basis of the total-degree-k part of S(t) (x) C: pairs (monomial, generator) with
/// 2 * |monomial| + deg(generator) = k, generator-major, monomials lex-descending.
struct SliceBasis {
  std::vector<std::pair<Exponent, std::size_t>> entries;
  Eigen::Index index_of(const Exponent& mono, std::size_t generator) const;
  Eigen::Index size() const { return static_cast<Eigen::Index>(entries.size()); }
};

SliceBasis slice_basis(const InvariantModel& m, int k);
/// Matrix of d_T from slice k to slice k + 1.
RationalMatrix slice_boundary(const InvariantModel& m, int k);
RationalVector to_slice(const InvariantModel& m, const SliceBasis& basis, const EquivariantElement& x);
EquivariantElement from_slice(const InvariantModel& m, const SliceBasis& basis, const RationalVector& v);

/// 2 * d_M + 2 * n + 4.
int default_cutoff(const InvariantModel& m);

/// dim_Q H^k_T for k = 0..cutoff.
std::vector<std::size_t> cohomology_hilbert(const InvariantModel& m, int cutoff);

/// Cohomology of the fraction-field Cartan complex. Inverting the degree-2 variables
/// collapses the grading to parity.
struct GenericCohomology {
  std::size_t even_rank = 0;
  std::size_t odd_rank = 0;
  /// Homogeneous polynomial cocycles whose classes form a Q(u)-basis, lowest degree first.
  std::vector<EquivariantElement> representatives;
  std::vector<int> degrees;

  std::size_t total() const { return even_rank + odd_rank; }
};

GenericCohomology cohomology_generic(const InvariantModel& m);

struct CohomologyReport {
  GenericCohomology generic;
  std::vector<std::size_t> hilbert;
};

CohomologyReport cohomology_report(const InvariantModel& m, int cutoff);

/// Coordinates of a Cartan cocycle in the generic basis, modulo coboundaries, over Q(u).
/// Throws InternalInconsistency if z does not decompose (z is not a cocycle).
FracVector generic_coordinates(const InvariantModel& m, const GenericCohomology& h, const EquivariantElement& z);

/// Dimensions of the cohomology of the underlying complex (C, d) in degrees 0..max degree.
std::vector<std::size_t> ordinary_cohomology(const InvariantModel& m);

/// Hilbert table predicted by H_T = S(t) (x) h(C), against the computed one. A mismatch
/// means the underlying cohomology is not even-concentrated or torsion is present.
struct FreePrediction {
  std::vector<std::size_t> underlying;
  std::vector<std::size_t> predicted;
  std::vector<std::size_t> actual;
  bool matches = false;
};

FreePrediction predict_free_hilbert(const InvariantModel& m, int cutoff);

/// True when a homogeneous element is d_T of something in S(t) (x) C.
bool is_coboundary(const InvariantModel& m, const EquivariantElement& x);

/// Generic rank of d_T from two routes: Bareiss elimination over Q(u) and seeded
/// specialization. Returned as N - 2 * rank.
struct GenericRankCheck {
  std::size_t exact_total = 0;
  std::size_t specialized_total = 0;
  SpecializedRank specialized;
};
GenericRankCheck generic_rank_check(const InvariantModel& m, std::uint64_t seed = kDefaultSeed);

}  // namespace eqcoh
