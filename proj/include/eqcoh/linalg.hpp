#pragma once

#include "eqcoh/errors.hpp"
#include "eqcoh/matrix.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace eqcoh {

/// Outcome of an exact linear solve. An inconsistent right-hand side is reported through
/// `consistent == false`, never by throwing.
template <typename Field>
struct LinearSolution {
  std::size_t rank = 0;
  bool consistent = true;
  /// Reduced-echelon particular solution (free variables set to zero), when a
  /// right-hand side was given and the system is consistent.
  std::optional<Vec<Field>> solution;
  /// Columns form a basis of the null space.
  Mat<Field> kernel;
};

/// Gauss-Jordan over Q.
LinearSolution<Rational> rank_and_solve(const RationalMatrix& m,
                                        const std::optional<RationalVector>& rhs = std::nullopt);

/// Exact rank / solve over the fraction field Q(u). Rows are cleared of denominators,
/// reduced by fraction-free (Bareiss) elimination over S(t), then back-substituted.
LinearSolution<RationalFunction> rank_and_solve(const FracMatrix& m,
                                                const std::optional<FracVector>& rhs = std::nullopt);
LinearSolution<RationalFunction> rank_and_solve(const PolyMatrix& m,
                                                const std::optional<FracVector>& rhs = std::nullopt);

std::size_t rank(const RationalMatrix& m);
/// Rank over the fraction field, via Bareiss elimination only.
std::size_t rank(const PolyMatrix& m);

/// Solves M X = B column by column; nullopt when some column is inconsistent.
std::optional<FracMatrix> solve(const FracMatrix& m, const FracMatrix& b);

/// Fraction-free row echelon form of a polynomial matrix. Entries of row k are
/// (k+1)-minors of the input, so every division performed is exact.
struct BareissEchelon {
  PolyMatrix reduced;
  std::vector<Eigen::Index> pivot_cols;
  int row_swaps = 0;
};
/// Pivots are searched only in the first `pivot_limit` columns (the rest ride along, e.g.
/// an augmented right-hand side).
BareissEchelon bareiss_echelon(PolyMatrix m, Eigen::Index pivot_limit);

inline constexpr std::uint64_t kDefaultSeed = 20211;

/// Random rational point with numerators in [-10^4, 10^4] and denominators in [1, 100].
std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t nvars);

RationalMatrix specialize(const PolyMatrix& m, std::span<const Rational> point);

struct SpecializedRank {
  std::size_t rank = 0;
  /// Rank at each evaluation point drawn (two, or three after a disagreement).
  std::vector<std::size_t> draws;
  bool disagreement = false;
};

/// Three mutually different specialized ranks.
class RankDrawError : public Error {
 public:
  explicit RankDrawError(std::vector<std::size_t> draws);
  const std::vector<std::size_t>& draws() const { return draws_; }

 private:
  std::vector<std::size_t> draws_;
};

/// Rank of a polynomial matrix estimated by evaluation at seeded random rational points.
/// Specialization can only lower the rank, so the larger draw wins; a disagreement
/// triggers a third draw.
SpecializedRank generic_specialized_rank(const PolyMatrix& m, std::uint64_t seed = kDefaultSeed);

}  // namespace eqcoh
