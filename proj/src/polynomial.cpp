#include "eqcoh/polynomial.hpp"

#include "eqcoh/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace eqcoh {

namespace {

void trim(Exponent& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

std::optional<Exponent> sub_exponents(const Exponent& a, const Exponent& b) {
  if (b.size() > a.size()) return std::nullopt;
  Exponent r = a;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (r[i] < b[i]) return std::nullopt;
    r[i] -= b[i];
  }
  trim(r);
  return r;
}

int total(const Exponent& e) { return static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)); }

}  // namespace

Polynomial::Polynomial(int c) {
  if (c != 0) terms_.emplace(Exponent{}, Rational(c));
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Exponent{}, c);
}

Polynomial Polynomial::variable(std::size_t index) {
  Exponent e(index + 1, 0);
  e[index] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponent e, Rational c) {
  Polynomial p;
  trim(e);
  if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const { return coefficient(Exponent{}); }

Rational Polynomial::coefficient(const Exponent& e) const {
  Exponent key = e;
  trim(key);
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t Polynomial::nvars() const {
  std::size_t n = 0;
  for (const auto& [e, c] : terms_) n = std::max(n, e.size());
  return n;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total(e));
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = total(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return total(t.first) == d; });
}

Polynomial Polynomial::homogeneous_part(int deg) const {
  Polynomial p;
  for (const auto& [e, c] : terms_)
    if (total(e) == deg) p.terms_.emplace(e, c);
  return p;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [e, v] : terms_) v *= c;
  }
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= point.size()) {
        term = 0;
        break;
      }
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  Polynomial r;
  for (const auto& [e, c] : terms_) {
    Polynomial term(c);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
      if (e[i] == 0) continue;
      if (i >= images.size()) {
        term = Polynomial();
        break;
      }
      term *= images[i].pow(e[i]);
    }
    r += term;
  }
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r(1), base = *this;
  while (k > 0) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return r;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return Rational(1);
  Integer g(0), l(1);
  for (const auto& [e, c] : terms_) {
    g = gcd(g, numerator_of(c));
    l = lcm(l, denominator_of(c));
  }
  return Rational(g, l);
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("divide_exact: division by zero polynomial");
  Polynomial q, r = a;
  const Exponent& lb = b.leading_exponent();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    auto shift = sub_exponents(r.leading_exponent(), lb);
    if (!shift) return std::nullopt;
    Polynomial t = Polynomial::monomial(std::move(*shift), r.leading_coefficient() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
  if (a.nvars() > 1 || b.nvars() > 1) throw UnsupportedRank("divmod requires univariate polynomials");
  Polynomial q, r = a;
  const int db = b.degree();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero() && r.degree() >= db) {
    const int shift = r.degree() - db;
    Polynomial t = Polynomial::monomial(shift == 0 ? Exponent{} : Exponent{static_cast<std::uint32_t>(shift)},
                                        r.leading_coefficient() / cb);
    q += t;
    r -= t * b;
  }
  return {q, r};
}

Polynomial monic(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading_coefficient());
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

namespace {

void enumerate(int remaining, std::size_t var, std::size_t nvars, Exponent& cur, std::vector<Exponent>& out) {
  if (var + 1 == nvars) {
    cur[var] = static_cast<std::uint32_t>(remaining);
    Exponent e = cur;
    trim(e);
    out.push_back(std::move(e));
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[var] = static_cast<std::uint32_t>(k);
    enumerate(remaining - k, var + 1, nvars, cur, out);
  }
}

}  // namespace

std::vector<Exponent> monomials_of_degree(int degree, std::size_t nvars) {
  std::vector<Exponent> out;
  if (degree < 0) return out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent cur(nvars, 0);
  enumerate(degree, 0, nvars, cur, out);
  return out;
}

std::size_t monomial_count(int degree, std::size_t nvars) {
  if (degree < 0) return 0;
  if (nvars == 0) return degree == 0 ? 1 : 0;
  // binomial(degree + nvars - 1, nvars - 1)
  std::size_t r = 1;
  for (std::size_t i = 1; i < nvars; ++i) r = r * (static_cast<std::size_t>(degree) + i) / i;
  return r;
}

std::string variable_name(std::size_t index, std::size_t nvars) {
  if (nvars == 1 && index == 0) return "u";
  return "u" + std::to_string(index + 1);
}

std::string to_string(const Polynomial& p, std::size_t nvars) {
  if (p.is_zero()) return "0";
  nvars = std::max(nvars, p.nvars());
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_name(i, nvars);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("polynomial '" + std::string(s_) + "': " + msg + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }
  unsigned exponent() {
    if (!peek('^')) return 1;
    ++pos_;
    return static_cast<unsigned>(integer().convert_to<unsigned long>());
  }

  Polynomial expression() {
    Polynomial acc;
    bool negate = false;
    if (peek('-')) {
      ++pos_;
      negate = true;
    } else if (peek('+')) {
      ++pos_;
    }
    acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (peek('*')) {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  Polynomial factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner.pow(exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer();
      if (peek('/')) {
        ++pos_;
        Integer den = integer();
        if (den == 0) fail("zero denominator");
        return Polynomial(Rational(num, den));
      }
      return Polynomial(Rational(num));
    }
    if (c == 'u') {
      ++pos_;
      std::size_t index = 0;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        const auto k = integer().convert_to<unsigned long>();
        if (k == 0) fail("variables are numbered from 1");
        index = k - 1;
      }
      return Polynomial::variable(index).pow(exponent());
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace eqcoh
