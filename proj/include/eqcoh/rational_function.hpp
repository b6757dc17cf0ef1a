#pragma once

#include "eqcoh/polynomial.hpp"

#include <string>

namespace eqcoh {

/// Element of the fraction field Q(u_1..u_n) of S(t).
///
/// Normalization avoids multivariate gcd: in one variable numerator and denominator are
/// reduced by their gcd; otherwise only common monomial factors and exact divisibility
/// of one side by the other are cancelled. The denominator is always scaled to integer
/// content 1 with positive lex-leading coefficient. Equality is decided by
/// cross-multiplication, so a non-reduced representation never affects correctness.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(int c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  /// True when the value lies in S(t); exact test via polynomial division.
  bool is_polynomial() const;
  /// The polynomial value. Throws std::domain_error if !is_polynomial().
  Polynomial to_polynomial() const;
  Rational evaluate(std::span<const Rational> point) const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const { return RationalFunction(-num_, den_, Normalized{}); }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  struct Normalized {};
  RationalFunction(Polynomial num, Polynomial den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

std::string to_string(const RationalFunction& f, std::size_t nvars);

}  // namespace eqcoh
