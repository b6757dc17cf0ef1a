#include "eqcoh/linalg.hpp"

#include <algorithm>

namespace eqcoh {

using Eigen::Index;

LinearSolution<Rational> rank_and_solve(const RationalMatrix& m, const std::optional<RationalVector>& rhs) {
  if (rhs && rhs->size() != m.rows()) throw StructuralError("rank_and_solve: right-hand side length mismatch");
  const Index rows = m.rows(), cols = m.cols();
  RationalMatrix a(rows, cols + 1);
  a.leftCols(cols) = m;
  a.col(cols) = rhs ? *rhs : RationalVector::Zero(rows);

  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.row(r).swap(a.row(p));
    const Rational inv = 1 / a(r, c);
    for (Index j = c; j <= cols; ++j) a(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (Index j = c; j <= cols; ++j)
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }

  LinearSolution<Rational> out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(cols, false);
  for (Index c : pivots) is_pivot[c] = true;

  if (rhs) {
    for (Index i = r; i < rows; ++i)
      if (a(i, cols) != 0) out.consistent = false;
    if (out.consistent) {
      RationalVector x = RationalVector::Zero(cols);
      for (std::size_t t = 0; t < pivots.size(); ++t) x(pivots[t]) = a(static_cast<Index>(t), cols);
      out.solution = std::move(x);
    }
  }

  out.kernel = RationalMatrix::Zero(cols, cols - static_cast<Index>(pivots.size()));
  Index k = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    out.kernel(f, k) = 1;
    for (std::size_t t = 0; t < pivots.size(); ++t) out.kernel(pivots[t], k) = -a(static_cast<Index>(t), f);
    ++k;
  }
  return out;
}

std::size_t rank(const RationalMatrix& m) { return rank_and_solve(m).rank; }

BareissEchelon bareiss_echelon(PolyMatrix a, Index pivot_limit) {
  const Index rows = a.rows(), cols = a.cols();
  Polynomial prev(1);
  BareissEchelon out;
  Index r = 0;
  for (Index c = 0; c < pivot_limit && r < rows; ++c) {
    // smallest nonzero candidate keeps intermediate minors small
    Index p = -1;
    for (Index i = r; i < rows; ++i) {
      if (a(i, c).is_zero()) continue;
      if (p < 0 || std::pair(a(i, c).degree(), a(i, c).terms().size()) <
                       std::pair(a(p, c).degree(), a(p, c).terms().size()))
        p = i;
    }
    if (p < 0) continue;
    if (p != r) {
      a.row(r).swap(a.row(p));
      ++out.row_swaps;
    }
    const Polynomial& piv = a(r, c);
    for (Index i = r + 1; i < rows; ++i) {
      const Polynomial lead = a(i, c);
      for (Index j = c + 1; j < cols; ++j) {
        Polynomial v = piv * a(i, j);
        if (!lead.is_zero() && !a(r, j).is_zero()) v -= lead * a(r, j);
        if (prev == Polynomial(1)) {
          a(i, j) = std::move(v);
        } else {
          auto q = divide_exact(v, prev);
          if (!q) throw InternalInconsistency("Bareiss elimination: inexact division");
          a(i, j) = std::move(*q);
        }
      }
      a(i, c) = Polynomial();
    }
    prev = a(r, c);
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const PolyMatrix& m) { return bareiss_echelon(m, m.cols()).pivot_cols.size(); }

namespace {

bool univariate(const Polynomial& p) { return p.nvars() <= 1; }

/// A common multiple of the denominators in a row (lcm in one variable).
Polynomial row_multiplier(const FracMatrix& m, Index i, const RationalFunction* extra) {
  Polynomial l(1);
  auto absorb = [&](const Polynomial& den) {
    if (den.is_constant()) return;
    if (univariate(l) && univariate(den)) {
      l = divmod(l * den, gcd(l, den)).first;
    } else if (!divide_exact(l, den)) {
      l *= den;
    }
  };
  for (Index j = 0; j < m.cols(); ++j) absorb(m(i, j).denominator());
  if (extra) absorb(extra->denominator());
  return l;
}

Polynomial scaled_entry(const RationalFunction& f, const Polynomial& l) {
  auto q = divide_exact(f.numerator() * l, f.denominator());
  if (!q) throw InternalInconsistency("row multiplier does not clear a denominator");
  return *q;
}

}  // namespace

LinearSolution<RationalFunction> rank_and_solve(const FracMatrix& m, const std::optional<FracVector>& rhs) {
  if (rhs && rhs->size() != m.rows()) throw StructuralError("rank_and_solve: right-hand side length mismatch");
  const Index rows = m.rows(), cols = m.cols();
  PolyMatrix a(rows, cols + 1);
  for (Index i = 0; i < rows; ++i) {
    const RationalFunction* b = rhs ? &(*rhs)(i) : nullptr;
    const Polynomial l = row_multiplier(m, i, b);
    for (Index j = 0; j < cols; ++j) a(i, j) = scaled_entry(m(i, j), l);
    a(i, cols) = b ? scaled_entry(*b, l) : Polynomial();
  }
  BareissEchelon ech = bareiss_echelon(std::move(a), cols);
  const PolyMatrix& e = ech.reduced;
  const auto& pivots = ech.pivot_cols;

  LinearSolution<RationalFunction> out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(cols, false);
  for (Index c : pivots) is_pivot[c] = true;

  // Back substitution with the given values of the free columns and augmented column.
  auto back_substitute = [&](FracVector x, bool use_rhs) {
    for (Index t = static_cast<Index>(pivots.size()) - 1; t >= 0; --t) {
      const Index pc = pivots[t];
      RationalFunction acc = use_rhs ? RationalFunction(e(t, cols)) : RationalFunction();
      for (Index j = pc + 1; j < cols; ++j)
        if (!e(t, j).is_zero() && !x(j).is_zero()) acc -= RationalFunction(e(t, j)) * x(j);
      x(pc) = acc / RationalFunction(e(t, pc));
    }
    return x;
  };

  if (rhs) {
    for (Index i = static_cast<Index>(pivots.size()); i < rows; ++i)
      if (!e(i, cols).is_zero()) out.consistent = false;
    if (out.consistent) out.solution = back_substitute(FracVector::Zero(cols), true);
  }

  out.kernel = FracMatrix::Zero(cols, cols - static_cast<Index>(pivots.size()));
  Index k = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    FracVector x = FracVector::Zero(cols);
    x(f) = 1;
    out.kernel.col(k++) = back_substitute(std::move(x), false);
  }
  return out;
}

LinearSolution<RationalFunction> rank_and_solve(const PolyMatrix& m, const std::optional<FracVector>& rhs) {
  return rank_and_solve(cast_exact<RationalFunction>(m), rhs);
}

std::optional<FracMatrix> solve(const FracMatrix& m, const FracMatrix& b) {
  FracMatrix x(m.cols(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    auto s = rank_and_solve(m, FracVector(b.col(j)));
    if (!s.consistent) return std::nullopt;
    x.col(j) = *s.solution;
  }
  return x;
}

std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t nvars) {
  std::vector<Rational> p;
  p.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    const long num = static_cast<long>(rng() % 20001) - 10000;
    const long den = static_cast<long>(rng() % 100) + 1;
    p.emplace_back(num, den);
  }
  return p;
}

RationalMatrix specialize(const PolyMatrix& m, std::span<const Rational> point) {
  RationalMatrix r(m.rows(), m.cols());
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) r(i, j) = m(i, j).evaluate(point);
  return r;
}

RankDrawError::RankDrawError(std::vector<std::size_t> draws)
    : Error("generic rank draws disagree: " + std::to_string(draws.at(0)) + ", " + std::to_string(draws.at(1)) +
            ", " + std::to_string(draws.at(2))),
      draws_(std::move(draws)) {}

SpecializedRank generic_specialized_rank(const PolyMatrix& m, std::uint64_t seed) {
  std::size_t n = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) n = std::max(n, m(i, j).nvars());
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    const auto point = random_point(rng, n);
    return rank(specialize(m, point));
  };
  SpecializedRank out;
  out.draws = {draw(), draw()};
  if (out.draws[0] == out.draws[1]) {
    out.rank = out.draws[0];
    return out;
  }
  out.disagreement = true;
  out.draws.push_back(draw());
  const auto& d = out.draws;
  if (d[2] != d[0] && d[2] != d[1]) throw RankDrawError(d);
  out.rank = *std::max_element(d.begin(), d.end());
  return out;
}

}  // namespace eqcoh
