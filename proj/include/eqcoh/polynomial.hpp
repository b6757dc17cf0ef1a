#pragma once

#include "eqcoh/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eqcoh {

/// Exponent vector of a monomial in u_1..u_n. Trailing zeros are always trimmed, so a
/// polynomial in fewer variables embeds into any larger ring without padding and the
/// standard lexicographic vector order is the lex monomial order.
using Exponent = std::vector<std::uint32_t>;

/// Element of S(t) = Q[u_1, ..., u_n]. The cohomological degree of a monomial is twice
/// its polynomial degree.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  Polynomial() = default;
  Polynomial(int c);  // NOLINT: constants convert implicitly (Eigen needs Scalar(0))
  Polynomial(const Rational& c);  // NOLINT

  /// u_{index+1}.
  static Polynomial variable(std::size_t index);
  static Polynomial monomial(Exponent e, Rational c = Rational(1));

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;

  /// Number of variables that actually occur.
  std::size_t nvars() const;
  /// Total polynomial degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Polynomial homogeneous_part(int deg) const;

  /// Lex-leading term. Precondition: nonzero.
  const Exponent& leading_exponent() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Rational evaluate(std::span<const Rational> point) const;
  /// Ring map u_i -> images[i]; variables beyond images.size() map to zero.
  Polynomial substitute(std::span<const Polynomial> images) const;
  Polynomial pow(unsigned k) const;

  /// Positive rational c with p / c having coprime integer coefficients (c = 1 for zero).
  Rational content() const;

 private:
  void add_term(const Exponent& e, const Rational& c);
  TermMap terms_;
};

/// Quotient when b divides a exactly in Q[u_1..u_n]; nullopt otherwise. b must be nonzero.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Euclidean division in Q[u]; both operands univariate (nvars <= 1), b nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd in Q[u] (gcd(0, 0) = 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// Divides by the leading coefficient; zero stays zero.
Polynomial monic(const Polynomial& p);

/// Monomials of total degree `degree` in `nvars` variables, lex-descending
/// (u_1^degree first). For nvars = 0 only degree 0 yields a monomial.
std::vector<Exponent> monomials_of_degree(int degree, std::size_t nvars);
/// Number of monomials of the given degree: binomial(degree + nvars - 1, nvars - 1).
std::size_t monomial_count(int degree, std::size_t nvars);

/// Variables print as "u" when nvars == 1 and "u1".."un" otherwise.
std::string to_string(const Polynomial& p, std::size_t nvars);
std::string variable_name(std::size_t index, std::size_t nvars);
/// Accepts sums of products of rationals, u, u1..uN, powers and parentheses.
Polynomial parse_polynomial(std::string_view text);

}  // namespace eqcoh
