#include "eqcoh/model.hpp"

#include "eqcoh/errors.hpp"

#include <algorithm>

namespace eqcoh {

using Eigen::Index;

int InvariantModel::max_degree() const {
  int d = 0;
  for (const auto& g : generators) d = std::max(d, g.degree);
  return d;
}

std::optional<std::size_t> InvariantModel::index_of(std::string_view generator) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == generator) return i;
  return std::nullopt;
}

bool InvariantModel::operator==(const InvariantModel& o) const {
  if (name != o.name || torus_rank != o.torus_rank || generators != o.generators || top_degree != o.top_degree ||
      integration != o.integration || compact != o.compact || fixed_points != o.fixed_points)
    return false;
  if (!same_matrix(d, o.d) || contractions.size() != o.contractions.size()) return false;
  for (std::size_t i = 0; i < contractions.size(); ++i)
    if (!same_matrix(contractions[i], o.contractions[i])) return false;
  if (products.size() != o.products.size() || classes.size() != o.classes.size()) return false;
  for (const auto& [key, v] : products) {
    auto it = o.products.find(key);
    if (it == o.products.end() || !same_matrix(v, it->second)) return false;
  }
  for (const auto& [key, v] : classes) {
    auto it = o.classes.find(key);
    if (it == o.classes.end() || !same_matrix(v, it->second)) return false;
  }
  return true;
}

std::string format_vector(const InvariantModel& m, const RationalVector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    const bool neg = v(i) < 0;
    const Rational mag = neg ? Rational(-v(i)) : v(i);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += m.generators[i].name;
  }
  return out.empty() ? "0" : out;
}

std::string to_string(const InvariantModel& m, const EquivariantElement& x) {
  std::string out;
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i).is_zero()) continue;
    std::string coeff = to_string(x(i), m.torus_rank);
    const bool neg = coeff[0] == '-' && x(i).terms().size() == 1;
    if (neg) coeff.erase(0, 1);
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    const std::string& g = m.generators[i].name;
    if (x(i).terms().size() > 1) coeff = "(" + coeff + ")";
    if (g == "1") {
      out += coeff;
    } else if (coeff == "1") {
      out += g;
    } else {
      out += coeff + "*" + g;
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

void check_square(const RationalMatrix& a, std::size_t n, const std::string& what) {
  if (a.rows() != static_cast<Index>(n) || a.cols() != static_cast<Index>(n))
    throw StructuralError(what + " is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                          ", expected " + std::to_string(n) + "x" + std::to_string(n));
}

class Reporter {
 public:
  explicit Reporter(const InvariantModel& m) : m_(m) {}

  void add(std::string axiom, std::vector<std::size_t> gens, std::string witness) {
    Violation v;
    v.axiom = std::move(axiom);
    for (auto g : gens) v.generators.push_back(m_.generators[g].name);
    v.witness = std::move(witness);
    report.violations.push_back(std::move(v));
  }

  /// One violation per nonzero column of `residual`.
  void columns(const RationalMatrix& residual, const std::string& axiom, const std::string& op) {
    for (Index j = 0; j < residual.cols(); ++j) {
      if (is_zero_matrix(residual.col(j))) continue;
      add(axiom, {static_cast<std::size_t>(j)},
          op + "(" + m_.generators[j].name + ") = " + format_vector(m_, residual.col(j)));
    }
  }

  ValidationReport report;

 private:
  const InvariantModel& m_;
};

}  // namespace

ValidationReport validate_model(const InvariantModel& m) {
  const std::size_t n = m.size();
  check_square(m.d, n, "d");
  if (m.contractions.size() != m.torus_rank)
    throw StructuralError(std::to_string(m.contractions.size()) + " contractions for torus rank " +
                          std::to_string(m.torus_rank));
  for (std::size_t i = 0; i < m.contractions.size(); ++i) check_square(m.contractions[i], n, "c_" + std::to_string(i + 1));
  for (const auto& [key, v] : m.products)
    if (key.first >= n || key.second >= n || v.size() != static_cast<Index>(n))
      throw StructuralError("product table entry out of range");
  for (const auto& [g, v] : m.integration)
    if (g >= n) throw StructuralError("integration entry for unknown generator index " + std::to_string(g));
  for (const auto& [name, x] : m.classes)
    if (x.size() != static_cast<Index>(n)) throw StructuralError("class '" + name + "' has wrong length");
  for (const auto& p : m.fixed_points)
    if (p.evaluation && p.evaluation->size() != static_cast<Index>(n))
      throw StructuralError("fixed point '" + p.name + "' evaluation has wrong length");

  Reporter rep(m);
  const auto deg = [&](Index i) { return m.generators[i].degree; };

  for (Index j = 0; j < m.d.cols(); ++j)
    for (Index i = 0; i < m.d.rows(); ++i)
      if (m.d(i, j) != 0 && deg(i) != deg(j) + 1)
        rep.add("deg(d) ≠ +1", {static_cast<std::size_t>(j)},
                "d(" + m.generators[j].name + ") has a component on " + m.generators[i].name);
  for (std::size_t k = 0; k < m.contractions.size(); ++k) {
    const auto& c = m.contractions[k];
    for (Index j = 0; j < c.cols(); ++j)
      for (Index i = 0; i < c.rows(); ++i)
        if (c(i, j) != 0 && deg(i) != deg(j) - 1)
          rep.add("deg(c) ≠ -1", {static_cast<std::size_t>(j)},
                  "c_" + std::to_string(k + 1) + "(" + m.generators[j].name + ") has a component on " +
                      m.generators[i].name);
  }

  rep.columns(mul(m.d, m.d), "d∘d ≠ 0", "d∘d");
  for (std::size_t k = 0; k < m.contractions.size(); ++k) {
    const auto& c = m.contractions[k];
    const std::string idx = std::to_string(k + 1);
    rep.columns(RationalMatrix(mul(m.d, c) + mul(c, m.d)), "d∘c + c∘d ≠ 0", "(d∘c_" + idx + " + c_" + idx + "∘d)");
    for (std::size_t l = k; l < m.contractions.size(); ++l) {
      const auto& c2 = m.contractions[l];
      const std::string idx2 = std::to_string(l + 1);
      rep.columns(RationalMatrix(mul(c, c2) + mul(c2, c)), "c∘c + c∘c ≠ 0",
                  "(c_" + idx + "∘c_" + idx2 + " + c_" + idx2 + "∘c_" + idx + ")");
    }
  }

  for (const auto& [key, v] : m.products) {
    const auto [a, b] = key;
    const int target = m.generators[a].degree + m.generators[b].degree;
    for (Index i = 0; i < v.size(); ++i)
      if (v(i) != 0 && deg(i) != target)
        rep.add("product degree", {a, b},
                m.generators[a].name + "*" + m.generators[b].name + " = " + format_vector(m, v));
    const bool odd = (m.generators[a].degree * m.generators[b].degree) % 2 != 0;
    if (a == b && odd && !is_zero_matrix(v))
      rep.add("graded commutativity", {a, b},
              m.generators[a].name + "*" + m.generators[a].name + " must vanish for odd degree");
    if (a < b) {
      auto it = m.products.find({b, a});
      if (it != m.products.end()) {
        const RationalVector expected = odd ? RationalVector(-v) : v;
        if (!same_matrix(expected, it->second))
          rep.add("graded commutativity", {a, b},
                  m.generators[a].name + "*" + m.generators[b].name + " = " + format_vector(m, v) + " but " +
                      m.generators[b].name + "*" + m.generators[a].name + " = " + format_vector(m, it->second));
      }
    }
  }

  for (const auto& [g, val] : m.integration)
    if (m.generators[g].degree != m.top_degree && val != 0)
      rep.add("integration degree", {g}, "integration defined on " + m.generators[g].name + " below top degree");
  if (m.compact) {
    for (std::size_t g = 0; g < n; ++g)
      if (m.generators[g].degree == m.top_degree && !m.integration.count(g))
        rep.add("integration incomplete", {g}, "no integral declared for " + m.generators[g].name);
    // Stokes: the functional kills exact top forms.
    for (std::size_t j = 0; j < n; ++j) {
      Rational s(0);
      for (const auto& [g, val] : m.integration) s += val * m.d(static_cast<Index>(g), static_cast<Index>(j));
      if (s != 0) rep.add("∫∘d ≠ 0", {j}, "∫ d(" + m.generators[j].name + ") = " + to_string(s));
    }
  }

  for (const auto& p : m.fixed_points) {
    try {
      p.tangent.validate(m.torus_rank);
    } catch (const DataError& e) {
      rep.add("fixed point tangent", {}, p.name + ": " + e.what());
    }
    if (p.tangent.real_dimension() != static_cast<unsigned>(m.top_degree))
      rep.add("fixed point tangent", {},
              p.name + ": tangent dimension " + std::to_string(p.tangent.real_dimension()) + " ≠ top degree " +
                  std::to_string(m.top_degree));
    if (!p.evaluation) continue;
    const RationalVector& ev = *p.evaluation;
    for (std::size_t g = 0; g < n; ++g)
      if (ev(static_cast<Index>(g)) != 0 && m.generators[g].degree != 0)
        rep.add("fixed point evaluation", {g}, p.name + ": positive-degree generator evaluates to nonzero");
    for (std::size_t k = 0; k < m.contractions.size(); ++k) {
      const RationalVector r = m.contractions[k].transpose() * ev;
      for (std::size_t g = 0; g < n; ++g)
        if (r(static_cast<Index>(g)) != 0)
          rep.add("evaluation∘c ≠ 0", {g},
                  p.name + ": c_" + std::to_string(k + 1) + "(" + m.generators[g].name + ") does not vanish at the point");
    }
    for (const auto& [cls, x] : m.classes) {
      auto it = p.restrictions.find(cls);
      if (it == p.restrictions.end()) continue;
      const Polynomial computed = restrict_to_point(m, p, x);
      if (!(computed == it->second))
        rep.add("restriction mismatch", {},
                p.name + ": class " + cls + " restricts to " + to_string(computed, m.torus_rank) + ", declared " +
                    to_string(it->second, m.torus_rank));
    }
  }
  return rep.report;
}

EquivariantElement generator_element(const InvariantModel& m, std::size_t index) {
  EquivariantElement x = EquivariantElement::Zero(static_cast<Index>(m.size()));
  x(static_cast<Index>(index)) = Polynomial(1);
  return x;
}

void check_element(const InvariantModel& m, const EquivariantElement& x) {
  if (x.size() != static_cast<Index>(m.size()))
    throw StructuralError("element with " + std::to_string(x.size()) + " coefficients does not belong to model '" +
                          m.name + "' (" + std::to_string(m.size()) + " generators)");
}

std::optional<int> total_degree(const InvariantModel& m, const EquivariantElement& x) {
  check_element(m, x);
  std::optional<int> deg;
  for (Index i = 0; i < x.size(); ++i) {
    for (const auto& [e, c] : x(i).terms()) {
      int pd = 0;
      for (auto k : e) pd += static_cast<int>(k);
      const int t = 2 * pd + m.generators[i].degree;
      if (deg && *deg != t) return std::nullopt;
      deg = t;
    }
  }
  return deg;
}

RationalVector generator_product(const InvariantModel& m, std::size_t i, std::size_t j) {
  if (auto it = m.products.find({i, j}); it != m.products.end()) return it->second;
  if (auto it = m.products.find({j, i}); it != m.products.end()) {
    const bool odd = (m.generators[i].degree * m.generators[j].degree) % 2 != 0;
    return odd ? RationalVector(-it->second) : it->second;
  }
  const int target = m.generators[i].degree + m.generators[j].degree;
  const bool occupied = std::any_of(m.generators.begin(), m.generators.end(),
                                    [target](const Generator& g) { return g.degree == target; });
  if (!occupied) return RationalVector::Zero(static_cast<Index>(m.size()));
  throw MissingProduct(m.generators[i].name, m.generators[j].name);
}

EquivariantElement multiply(const InvariantModel& m, const EquivariantElement& x, const EquivariantElement& y) {
  check_element(m, x);
  check_element(m, y);
  EquivariantElement r = EquivariantElement::Zero(static_cast<Index>(m.size()));
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < y.size(); ++j) {
      if (y(j).is_zero()) continue;
      const RationalVector g = generator_product(m, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      const Polynomial coeff = x(i) * y(j);
      for (Index k = 0; k < g.size(); ++k)
        if (g(k) != 0) r(k) += coeff * g(k);
    }
  }
  return r;
}

Polynomial restrict_to_point(const InvariantModel& m, const FixedPointDatum& p, const EquivariantElement& x) {
  check_element(m, x);
  if (!p.evaluation) throw DataError("fixed point '" + p.name + "' has no evaluation data");
  Polynomial r;
  for (Index i = 0; i < x.size(); ++i)
    if ((*p.evaluation)(i) != 0 && !x(i).is_zero()) r += x(i) * (*p.evaluation)(i);
  return r;
}

}  // namespace eqcoh
