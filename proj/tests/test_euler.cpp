#include "eqcoh/euler.hpp"
#include "eqcoh/gysin.hpp"
#include "eqcoh/models.hpp"

#include <doctest.h>

#include <random>

using namespace eqcoh;

namespace {

const Polynomial u = Polynomial::variable(0);
const Polynomial v = Polynomial::variable(1);

LinearRepresentation rep(unsigned trivial, std::vector<std::pair<std::vector<std::int64_t>, unsigned>> weights) {
  LinearRepresentation r;
  r.trivial_multiplicity = trivial;
  for (auto& [w, m] : weights) r.weighted.emplace_back(Weight{w}, m);
  return r;
}

FixedPointDatum datum(std::string name, LinearRepresentation tangent, std::map<std::string, Polynomial> restrictions) {
  FixedPointDatum p;
  p.name = std::move(name);
  p.tangent = std::move(tangent);
  p.restrictions = std::move(restrictions);
  return p;
}

LinearRepresentation random_rep(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> count(0, 3), coeff(-3, 3), mult(1, 2), trivial(0, 4);
  LinearRepresentation r;
  r.trivial_multiplicity = trivial(rng) == 0 ? 1 : 0;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    Weight w;
    for (std::size_t j = 0; j < n; ++j) w.coeffs.push_back(coeff(rng));
    if (w.is_zero()) w.coeffs[0] = 1;
    r.weighted.emplace_back(std::move(w), static_cast<unsigned>(mult(rng)));
  }
  return r;
}

}  // namespace

TEST_CASE("Euler classes of linear representations") {
  CHECK(euler_linear(rep(0, {{{1}, 1}})) == u);
  CHECK(euler_linear(rep(1, {{{1}, 1}})).is_zero());
  CHECK(euler_linear(rep(0, {{{1, 0}, 1}, {{1, -1}, 1}})) == u * (u - v));
  CHECK(euler_linear(rep(0, {{{2}, 3}})) == Polynomial(8) * u * u * u);
  CHECK(euler_linear(LinearRepresentation{}) == Polynomial(1));
  CHECK_THROWS_AS(rep(0, {{{0, 0}, 1}}).validate(2), DataError);
  CHECK_THROWS_AS(rep(0, {{{1}, 1}}).validate(2), DataError);
}

TEST_CASE("Euler classes are multiplicative and vanish exactly on trivial summands") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_rep(rng, 2);
    const auto b = random_rep(rng, 2);
    CHECK(nested_euler_check(a, b));
    CHECK(euler_linear(direct_sum(a, b)) == euler_linear(a) * euler_linear(b));
    CHECK(euler_linear(a).is_zero() == (a.trivial_multiplicity > 0));
  }
  CHECK(nested_euler_check(rep(0, {{{1}, 1}}), rep(0, {{{2}, 1}})));
  CHECK(nested_euler_check(rep(2, {}), rep(0, {{{5}, 1}})));
}

TEST_CASE("Euler classes commute with weight restriction") {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = random_rep(rng, 2);
    IntMatrix a(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) a(i, j) = entry(rng);
    CHECK(restrict_polynomial(euler_linear(r), a) == euler_linear(restrict_representation(r, a)));
  }
}

TEST_CASE("localization sums") {
  const InvariantModel s2 = s2_rotation();
  CHECK(localize_integral(s2.fixed_points, "one").value == RationalFunction(0));
  const auto two = localize_integral(s2.fixed_points, "w");
  CHECK(two.value == RationalFunction(2));
  CHECK(two.is_polynomial);

  const std::vector<FixedPointDatum> single{datum("x", rep(0, {{{1}, 1}}), {{"thom", u}})};
  CHECK(localize_integral(single, "thom").value == RationalFunction(1));

  const std::vector<FixedPointDatum> half{datum("x", rep(0, {{{1}, 1}}), {{"one", Polynomial(1)}})};
  const auto frac = localize_integral(half, "one");
  CHECK_FALSE(frac.is_polynomial);

  const std::vector<FixedPointDatum> flat{datum("x", rep(2, {}), {{"one", Polynomial(1)}})};
  CHECK_THROWS_AS(localize_integral(flat, "one"), NonIsolatedFixedPoint);
  CHECK_THROWS_AS(localize_integral(s2.fixed_points, "nothing"), DataError);
}

TEST_CASE("localization zero sum and the Thom identity on random data") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<FixedPointDatum> pts;
    std::uniform_int_distribution<int> pairs(1, 3);
    const int k = pairs(rng);
    for (int i = 0; i < k; ++i) {
      auto r = random_rep(rng, 2);
      r.trivial_multiplicity = 0;
      if (r.weighted.empty()) r.weighted.emplace_back(Weight{{1, 1}}, 1);
      LinearRepresentation neg = r;
      unsigned dim = 0;
      for (auto& [w, m] : neg.weighted) {
        for (auto& c : w.coeffs) c = -c;
        dim += m;
      }
      // the opposite point has Euler class (-1)^dim e; make dim odd so the two cancel
      if (dim % 2 == 0) {
        r.weighted.emplace_back(Weight{{1, 0}}, 1);
        neg.weighted.emplace_back(Weight{{-1, 0}}, 1);
      }
      const Polynomial e = euler_linear(r);
      pts.push_back(datum("p" + std::to_string(i), r, {{"one", Polynomial(1)}, {"thom", e}}));
      pts.push_back(datum("q" + std::to_string(i), neg, {{"one", Polynomial(1)}, {"thom", euler_linear(neg)}}));
    }
    CHECK(localize_integral(pts, "one").value == RationalFunction(0));
    CHECK(localize_integral(pts, "thom").value == RationalFunction(static_cast<int>(pts.size())));
  }
}

TEST_CASE("localization agrees with integration on builtin models") {
  for (const auto& m : {s2_rotation(), point(1), point(2), c_alpha({1, 2}), c_alpha({-3})}) {
    INFO(m.name);
    const auto r = localization_consistency(m);
    CHECK(r.ok());
    CHECK(r.entries.size() == (m.size() == 1 ? 1u : 2u));
  }
  const auto s = localization_consistency(s2_rotation());
  CHECK(s.entries[0].localized == RationalFunction(0));
  CHECK(s.entries[1].integrated == Polynomial(2));
  CHECK_THROWS_AS(localization_consistency(circle_free()), DataError);

  InvariantModel wrong = s2_rotation();
  wrong.integration[*wrong.index_of("vol")] = 1;
  CHECK_FALSE(localization_consistency(wrong).ok());
}

TEST_CASE("Lefschetz numbers") {
  auto identity = [](std::vector<int> dims) {
    std::vector<RationalMatrix> out;
    for (int d : dims) out.push_back(RationalMatrix::Identity(d, d));
    return out;
  };
  CHECK(lefschetz_number(identity({1, 0, 1})) == 2);
  CHECK(lefschetz_number(identity({1, 1})) == 0);
  std::vector<RationalMatrix> fix{RationalMatrix::Identity(1, 1), RationalMatrix::Zero(1, 1)};
  CHECK(lefschetz_number(fix) == 1);
  RationalMatrix flip(2, 2);
  flip << 0, 1, 1, 0;
  std::vector<RationalMatrix> torus{RationalMatrix::Identity(1, 1), flip, -RationalMatrix::Identity(1, 1)};
  CHECK(lefschetz_number(torus) == 0);
  std::vector<RationalMatrix> bad{RationalMatrix::Zero(1, 2)};
  CHECK_THROWS_AS(lefschetz_number(bad), StructuralError);
}
