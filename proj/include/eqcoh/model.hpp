#pragma once

#include "eqcoh/fixed_point.hpp"
#include "eqcoh/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqcoh {

struct Generator {
  std::string name;
  int degree = 0;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Generator pair (i, j) -> coordinates of g_i * g_j. Partial: a pair may be declared in
/// either order; the other order follows from graded commutativity.
using ProductTable = std::map<std::pair<std::size_t, std::size_t>, RationalVector>;

/// A finite model of the invariant forms of a torus manifold: a graded complex with a
/// differential `d` (degree +1) and one contraction per torus variable (degree -1),
/// stored as square rational matrices acting on generator coordinates (column j is the
/// image of generator j).
struct InvariantModel {
  std::string name;
  std::size_t torus_rank = 0;
  std::vector<Generator> generators;
  RationalMatrix d;
  std::vector<RationalMatrix> contractions;
  ProductTable products;
  int top_degree = 0;
  /// Integration functional on top-degree generators.
  std::map<std::size_t, Rational> integration;
  bool compact = false;
  /// Named equivariant classes, referenced by fixed-point restrictions and the CLI.
  std::map<std::string, PolyVector> classes;
  std::vector<FixedPointDatum> fixed_points;

  std::size_t size() const { return generators.size(); }
  int max_degree() const;
  std::optional<std::size_t> index_of(std::string_view generator) const;
  bool operator==(const InvariantModel& o) const;
};

/// Element of the Cartan complex: one S(t) coefficient per generator, sum P_g (x) g.
using EquivariantElement = PolyVector;

struct Violation {
  std::string axiom;
  std::vector<std::string> generators;
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks d^2 = 0, degree shifts, dc + cd = 0, c_i c_j + c_j c_i = 0, product-table
/// degree additivity and graded commutativity, and the consistency of integration,
/// classes and fixed-point data. Throws StructuralError on dimension mismatches.
ValidationReport validate_model(const InvariantModel& m);

EquivariantElement generator_element(const InvariantModel& m, std::size_t index);
/// Throws StructuralError when x does not have one coefficient per generator.
void check_element(const InvariantModel& m, const EquivariantElement& x);

/// 2 * polydeg + generator degree of every nonzero term, or nullopt if they differ
/// (or x is zero).
std::optional<int> total_degree(const InvariantModel& m, const EquivariantElement& x);

/// Coordinates of g_i * g_j. Products landing in a degree with no generators are zero;
/// any other missing entry throws MissingProduct.
RationalVector generator_product(const InvariantModel& m, std::size_t i, std::size_t j);
/// S(t)-bilinear extension of the product table.
EquivariantElement multiply(const InvariantModel& m, const EquivariantElement& x, const EquivariantElement& y);

/// Value of x at a fixed point with an evaluation vector.
Polynomial restrict_to_point(const InvariantModel& m, const FixedPointDatum& p, const EquivariantElement& x);

std::string to_string(const InvariantModel& m, const EquivariantElement& x);
std::string format_vector(const InvariantModel& m, const RationalVector& v);

}  // namespace eqcoh
