#include "oracle.hpp"

#include "eqcoh/linalg.hpp"
#include "eqcoh/rational_function.hpp"
#include "eqcoh/smith.hpp"

#include <doctest.h>

using namespace eqcoh;
using Eigen::Index;

namespace {

const Polynomial u = Polynomial::variable(0);
const Polynomial u2 = Polynomial::variable(1);

PolyMatrix poly_matrix(std::initializer_list<std::initializer_list<Polynomial>> rows) {
  PolyMatrix a(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (const auto& x : r) a(i, j++) = x;
    ++i;
  }
  return a;
}

}  // namespace

TEST_CASE("rationals print and parse canonically") {
  CHECK(to_string(Rational(Integer(6), Integer(-4))) == "-3/2");
  CHECK(parse_rational("3/-6") == Rational(-1, 2));
  CHECK(to_string(Rational(4)) == "4");
  CHECK(parse_rational("10/4") == Rational(5, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("polynomial arithmetic is a commutative ring") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = oracle::random_polynomial(rng, 2, 3);
    const auto b = oracle::random_polynomial(rng, 2, 3);
    const auto c = oracle::random_polynomial(rng, 2, 2);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Polynomial());
    CHECK(a * Polynomial(1) == a);
    const std::vector<Rational> pt{Rational(3, 2), Rational(-5)};
    CHECK((a * b + c).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt) + c.evaluate(pt));
    CHECK(parse_polynomial(to_string(a, 2)) == a);
  }
}

TEST_CASE("polynomial grading and printing") {
  const Polynomial p = u * u - Polynomial(Rational(1, 2)) * u;
  CHECK(p.degree() == 2);
  CHECK_FALSE(p.is_homogeneous());
  CHECK(p.homogeneous_part(2) == u * u);
  CHECK(to_string(p, 1) == "u^2 - 1/2*u");
  CHECK(to_string(u * u2, 2) == "u1*u2");
  CHECK(Polynomial().degree() == -1);
  CHECK(parse_polynomial("(u1 + u2)^2") == u * u + Polynomial(2) * u * u2 + u2 * u2);
  CHECK_THROWS_AS(parse_polynomial("u^"), ParseError);
  CHECK(monomial_count(3, 2) == 4);
  CHECK(monomials_of_degree(2, 2).front() == Exponent{2});
}

TEST_CASE("univariate division and gcd") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = oracle::random_polynomial(rng, 1, 5);
    auto b = oracle::random_polynomial(rng, 1, 3);
    if (b.is_zero()) b = u + Polynomial(1);
    const auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    const auto g = gcd(a * b, b * b);
    CHECK(divide_exact(a * b, g).has_value());
    CHECK(divide_exact(b * b, g).has_value());
    CHECK(divide_exact(g, b).has_value());
  }
  CHECK(gcd(u * u, u * (u + Polynomial(1))) == u);
}

TEST_CASE("rational functions form a field") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = oracle::random_polynomial(rng, 2, 2);
    auto b = oracle::random_polynomial(rng, 2, 2);
    if (a.is_zero() || b.is_zero()) continue;
    const RationalFunction x(a, b);
    const RationalFunction y(b + a, a);
    CHECK(x * RationalFunction(b, a) == RationalFunction(1));
    CHECK(x / x == RationalFunction(1));
    CHECK(x + y - y == x);
    CHECK(x * (y + x) == x * y + x * x);
    CHECK(RationalFunction(a * b, b * b) == RationalFunction(a, b));
  }
  const RationalFunction h(Polynomial(2) * u, Polynomial(4) * u * u);
  CHECK(h.denominator() == u);
  CHECK(h.numerator() == Polynomial(Rational(1, 2)));
  CHECK(RationalFunction(u * u, u).is_polynomial());
  CHECK_FALSE(RationalFunction(u, u + Polynomial(1)).is_polynomial());
}

TEST_CASE("rank_and_solve over Q") {
  RationalMatrix z = RationalMatrix::Zero(2, 2);
  auto s0 = rank_and_solve(z);
  CHECK(s0.rank == 0);
  CHECK(s0.kernel.cols() == 2);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const Index r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    RationalMatrix a(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) a(i, j) = trial % 3 == 0 && j == c - 1 ? a(i, 0) * 2 : Rational(e(rng));
    RationalVector x(c);
    for (Index j = 0; j < c; ++j) x(j) = e(rng);
    const RationalVector b = mul(a, x);
    const auto s = rank_and_solve(a, b);
    CHECK(s.rank == oracle::rank(a));
    CHECK(s.consistent);
    REQUIRE(s.solution);
    CHECK(same_matrix(mul(a, *s.solution), b));
    CHECK(s.kernel.cols() == c - static_cast<Index>(s.rank));
    CHECK(is_zero_matrix(mul(a, s.kernel)));
    CHECK(oracle::rank(s.kernel) == static_cast<std::size_t>(s.kernel.cols()));
  }
  RationalMatrix a(2, 1);
  a << 1, 1;
  RationalVector b(2);
  b << 1, 2;
  const auto bad = rank_and_solve(a, b);
  CHECK_FALSE(bad.consistent);
  CHECK_FALSE(bad.solution);
}

TEST_CASE("rank_and_solve over the fraction field") {
  const auto s = rank_and_solve(poly_matrix({{u}}), FracVector::Constant(1, RationalFunction(u * u)));
  CHECK(s.rank == 1);
  REQUIRE(s.solution);
  CHECK((*s.solution)(0) == RationalFunction(u));

  const auto deg = poly_matrix({{u, u * u}, {Polynomial(1), u}});
  CHECK(rank_and_solve(deg).rank == 1);
  CHECK(oracle::leibniz_det(deg).is_zero());
  CHECK(rank(deg) == 1);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const PolyMatrix a = oracle::random_poly_matrix(rng, 3, 4, 2, 2, 0.4);
    FracVector x(4);
    for (Index j = 0; j < 4; ++j) x(j) = RationalFunction(oracle::random_polynomial(rng, 2, 1));
    const FracMatrix af = cast_exact<RationalFunction>(a);
    const FracVector b = mul(af, x);
    const auto sol = rank_and_solve(af, b);
    CHECK(sol.consistent);
    REQUIRE(sol.solution);
    CHECK(same_matrix(mul(af, *sol.solution), b));
    CHECK(is_zero_matrix(mul(af, sol.kernel)));
    CHECK(static_cast<std::size_t>(sol.kernel.cols()) + sol.rank == 4);
  }
}

TEST_CASE("specialized rank agrees with exact rank on 200 random matrices") {
  std::mt19937_64 rng(2021);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> vars(1, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const Index r = dim(rng), c = dim(rng);
    const std::size_t n = static_cast<std::size_t>(vars(rng));
    PolyMatrix a = oracle::random_poly_matrix(rng, r, c, n, 3, 0.35);
    if (trial % 4 == 0 && r > 1) a.row(r - 1) = a.row(0) * oracle::random_polynomial(rng, n, 1);
    const auto exact = rank_and_solve(a).rank;
    const auto spec = generic_specialized_rank(a, 1000 + static_cast<std::uint64_t>(trial));
    CHECK(exact == spec.rank);
  }
}

TEST_CASE("generic_specialized_rank examples and determinism") {
  CHECK(generic_specialized_rank(poly_matrix({{u}})).rank == 1);
  CHECK(generic_specialized_rank(poly_matrix({{u, u * u}, {Polynomial(1), u}})).rank == 1);
  CHECK(generic_specialized_rank(poly_matrix({{u - u2}})).rank == 1);
  const auto a = generic_specialized_rank(poly_matrix({{u, u2}}), 99);
  const auto b = generic_specialized_rank(poly_matrix({{u, u2}}), 99);
  CHECK(a.draws == b.draws);
  CHECK(a.draws.size() == 2);
}

TEST_CASE("determinant matches permutation expansion") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 4;
    const PolyMatrix a = oracle::random_poly_matrix(rng, n, n, 1, 2, 0.3);
    CHECK(determinant(a) == oracle::leibniz_det(a));
  }
}

namespace {

void check_smith_contract(const PolyMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  CHECK(same_matrix(mul(mul(s.U, a), s.V), s.D));
  const Polynomial du = oracle::leibniz_det(s.U);
  const Polynomial dv = oracle::leibniz_det(s.V);
  CHECK((du.is_constant() && !du.is_zero()));
  CHECK((dv.is_constant() && !dv.is_zero()));
  for (Index i = 0; i < s.D.rows(); ++i)
    for (Index j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j).is_zero());
  for (std::size_t k = 0; k < s.invariant_factors.size(); ++k) {
    CHECK(s.invariant_factors[k].leading_coefficient() == 1);
    CHECK(s.D(static_cast<Index>(k), static_cast<Index>(k)) == s.invariant_factors[k]);
    if (k + 1 < s.invariant_factors.size())
      CHECK(divide_exact(s.invariant_factors[k + 1], s.invariant_factors[k]).has_value());
  }
  for (Index k = static_cast<Index>(s.invariant_factors.size()); k < std::min(s.D.rows(), s.D.cols()); ++k)
    CHECK(s.D(k, k).is_zero());
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  const SmithForm id = smith_normal_form(PolyMatrix::Identity(3, 3));
  CHECK(same_matrix(id.D, PolyMatrix::Identity(3, 3)));
  const SmithForm dg = smith_normal_form(poly_matrix({{u, 0}, {0, u * u}}));
  CHECK(dg.invariant_factors == std::vector<Polynomial>{u, u * u});
  const SmithForm up = smith_normal_form(poly_matrix({{u, u}, {0, u * u}}));
  CHECK(up.invariant_factors == std::vector<Polynomial>{u, u * u});
  const SmithForm swap = smith_normal_form(poly_matrix({{u * u, 0}, {0, u}}));
  CHECK(swap.invariant_factors == std::vector<Polynomial>{u, u * u});
  const SmithForm fix = smith_normal_form(poly_matrix({{u + Polynomial(1), 0}, {0, u}}));
  CHECK(fix.invariant_factors == std::vector<Polynomial>{Polynomial(1), u * u + u});
  CHECK_THROWS_AS(smith_normal_form(poly_matrix({{u2}})), UnsupportedRank);
}

TEST_CASE("Smith normal form contract on random matrices") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const PolyMatrix a = oracle::random_poly_matrix(rng, dim(rng), dim(rng), 1, 3, 0.4);
    check_smith_contract(a);
  }
}
