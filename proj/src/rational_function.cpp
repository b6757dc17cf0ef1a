#include "eqcoh/rational_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace eqcoh {

namespace {

/// Largest monomial dividing every term of p (p nonzero).
Exponent monomial_gcd(const Polynomial& p) {
  Exponent g = p.terms().begin()->first;
  for (const auto& [e, c] : p.terms()) {
    g.resize(std::min(g.size(), e.size()));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], e[i]);
  }
  while (!g.empty() && g.back() == 0) g.pop_back();
  return g;
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den_.is_constant()) {
    num_ *= Rational(1 / den_.constant_term());
    den_ = Polynomial(1);
    return;
  }
  if (num_.nvars() <= 1 && den_.nvars() <= 1) {
    const Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  } else {
    const Exponent mg = [&] {
      Exponent a = monomial_gcd(num_), b = monomial_gcd(den_);
      a.resize(std::min(a.size(), b.size()));
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::min(a[i], b[i]);
      return a;
    }();
    if (!mg.empty()) {
      const Polynomial m = Polynomial::monomial(mg);
      num_ = *divide_exact(num_, m);
      den_ = *divide_exact(den_, m);
    }
    if (auto q = divide_exact(num_, den_)) {
      num_ = std::move(*q);
      den_ = Polynomial(1);
      return;
    }
    if (auto q = divide_exact(den_, num_)) {
      den_ = std::move(*q);
      num_ = Polynomial(1);
    }
  }
  if (den_.is_constant()) {
    num_ *= Rational(1 / den_.constant_term());
    den_ = Polynomial(1);
    return;
  }
  Rational scale = den_.content();
  if (den_.leading_coefficient() < 0) scale = -scale;
  const Rational inv = 1 / scale;
  num_ *= inv;
  den_ *= inv;
}

bool RationalFunction::is_polynomial() const {
  return den_.is_constant() || divide_exact(num_, den_).has_value();
}

Polynomial RationalFunction::to_polynomial() const {
  if (den_.is_constant()) return num_ * Rational(1 / den_.constant_term());
  if (auto q = divide_exact(num_, den_)) return *q;
  throw std::domain_error("rational function is not a polynomial");
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  const Rational d = den_.evaluate(point);
  if (d == 0) throw std::domain_error("rational function evaluated at a pole");
  return num_.evaluate(point) / d;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::string to_string(const RationalFunction& f, std::size_t nvars) {
  if (f.denominator() == Polynomial(1)) return to_string(f.numerator(), nvars);
  auto wrap = [&](const Polynomial& p) {
    const std::string s = to_string(p, nvars);
    return p.terms().size() > 1 || s.find('*') != std::string::npos ? "(" + s + ")" : s;
  };
  return wrap(f.numerator()) + "/" + wrap(f.denominator());
}

}  // namespace eqcoh
