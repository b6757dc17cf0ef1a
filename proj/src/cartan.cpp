#include "eqcoh/cartan.hpp"

#include "eqcoh/errors.hpp"

#include <algorithm>
#include <numeric>

namespace eqcoh {

using Eigen::Index;

PolyMatrix cartan_matrix(const InvariantModel& m) {
  const Index n = static_cast<Index>(m.size());
  PolyMatrix D(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      Polynomial e(m.d(i, j));
      for (std::size_t k = 0; k < m.contractions.size(); ++k)
        if (m.contractions[k](i, j) != 0) e += Polynomial::variable(k) * m.contractions[k](i, j);
      D(i, j) = std::move(e);
    }
  return D;
}

EquivariantElement cartan_differential(const InvariantModel& m, const EquivariantElement& x) {
  check_element(m, x);
  return mul(cartan_matrix(m), x);
}

Index SliceBasis::index_of(const Exponent& mono, std::size_t generator) const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (entries[i].second == generator && entries[i].first == mono) return static_cast<Index>(i);
  return -1;
}

SliceBasis slice_basis(const InvariantModel& m, int k) {
  SliceBasis b;
  for (std::size_t g = 0; g < m.size(); ++g) {
    const int rest = k - m.generators[g].degree;
    if (rest < 0 || rest % 2 != 0) continue;
    for (auto& mono : monomials_of_degree(rest / 2, m.torus_rank)) b.entries.emplace_back(std::move(mono), g);
  }
  return b;
}

RationalMatrix slice_boundary(const InvariantModel& m, int k) {
  const SliceBasis src = slice_basis(m, k), dst = slice_basis(m, k + 1);
  RationalMatrix B = RationalMatrix::Zero(dst.size(), src.size());
  for (Index col = 0; col < src.size(); ++col) {
    const auto& [mono, g] = src.entries[col];
    const Index gj = static_cast<Index>(g);
    for (Index i = 0; i < m.d.rows(); ++i)
      if (m.d(i, gj) != 0) B(dst.index_of(mono, static_cast<std::size_t>(i)), col) += m.d(i, gj);
    for (std::size_t v = 0; v < m.contractions.size(); ++v) {
      Exponent shifted = mono;
      if (shifted.size() <= v) shifted.resize(v + 1, 0);
      shifted[v] += 1;
      for (Index i = 0; i < m.contractions[v].rows(); ++i)
        if (m.contractions[v](i, gj) != 0)
          B(dst.index_of(shifted, static_cast<std::size_t>(i)), col) += m.contractions[v](i, gj);
    }
  }
  return B;
}

RationalVector to_slice(const InvariantModel& m, const SliceBasis& basis, const EquivariantElement& x) {
  check_element(m, x);
  RationalVector v = RationalVector::Zero(basis.size());
  for (Index g = 0; g < x.size(); ++g)
    for (const auto& [e, c] : x(g).terms()) {
      const Index idx = basis.index_of(e, static_cast<std::size_t>(g));
      if (idx < 0) throw StructuralError("element is not homogeneous of the slice degree");
      v(idx) = c;
    }
  return v;
}

EquivariantElement from_slice(const InvariantModel& m, const SliceBasis& basis, const RationalVector& v) {
  EquivariantElement x = EquivariantElement::Zero(static_cast<Index>(m.size()));
  for (Index i = 0; i < basis.size(); ++i)
    if (v(i) != 0) x(static_cast<Index>(basis.entries[i].second)) += Polynomial::monomial(basis.entries[i].first, v(i));
  return x;
}

int default_cutoff(const InvariantModel& m) {
  return 2 * m.top_degree + 2 * static_cast<int>(m.torus_rank) + 4;
}

std::vector<std::size_t> cohomology_hilbert(const InvariantModel& m, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cohomology_hilbert: negative cutoff");
  std::vector<std::size_t> ranks;  // ranks[k] = rank of d_T: slice k -> slice k+1
  ranks.reserve(static_cast<std::size_t>(cutoff) + 1);
  for (int k = 0; k <= cutoff; ++k) ranks.push_back(rank(slice_boundary(m, k)));
  std::vector<std::size_t> h;
  for (int k = 0; k <= cutoff; ++k) {
    const std::size_t dim = static_cast<std::size_t>(slice_basis(m, k).size());
    h.push_back(dim - ranks[k] - (k > 0 ? ranks[k - 1] : 0));
  }
  return h;
}

namespace {

std::vector<Index> parity_rows(const InvariantModel& m, int parity) {
  std::vector<Index> rows;
  for (std::size_t g = 0; g < m.size(); ++g)
    if (m.generators[g].degree % 2 == parity) rows.push_back(static_cast<Index>(g));
  return rows;
}

/// Restriction of D to the columns of one parity and rows of the other.
PolyMatrix block(const PolyMatrix& D, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  PolyMatrix b(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows.size(); ++i) b(static_cast<Index>(i), static_cast<Index>(j)) = D(rows[i], cols[j]);
  return b;
}

}  // namespace

GenericCohomology cohomology_generic(const InvariantModel& m) {
  const PolyMatrix D = cartan_matrix(m);
  const std::vector<Index> even = parity_rows(m, 0), odd = parity_rows(m, 1);
  const PolyMatrix even_from_odd = block(D, even, odd);
  const PolyMatrix odd_from_even = block(D, odd, even);
  const std::size_t r_eo = rank(even_from_odd), r_oe = rank(odd_from_even);

  GenericCohomology h;
  h.even_rank = even.size() - r_oe - r_eo;
  h.odd_rank = odd.size() - r_eo - r_oe;

  // Greedy homogeneous representatives: walk total degrees upward and keep a cocycle when
  // it is independent over Q(u) of the image of d_T and of the classes already chosen.
  struct Span {
    PolyMatrix cols;
    std::size_t rank;
  };
  Span spans[2] = {{even_from_odd, r_eo}, {odd_from_even, r_oe}};
  const std::vector<Index>* rows_of[2] = {&even, &odd};
  const std::size_t wanted[2] = {h.even_rank, h.odd_rank};
  std::size_t found[2] = {0, 0};

  const int limit = m.max_degree() + 2 * static_cast<int>(m.size()) + 2;
  for (int k = 0; k <= limit && (found[0] < wanted[0] || found[1] < wanted[1]); ++k) {
    const int p = k % 2;
    if (found[p] == wanted[p]) continue;
    const SliceBasis basis = slice_basis(m, k);
    if (basis.size() == 0) continue;
    const RationalMatrix cocycles = rank_and_solve(slice_boundary(m, k)).kernel;
    for (Index c = 0; c < cocycles.cols() && found[p] < wanted[p]; ++c) {
      const EquivariantElement z = from_slice(m, basis, cocycles.col(c));
      Span& s = spans[p];
      PolyMatrix extended(s.cols.rows(), s.cols.cols() + 1);
      extended.leftCols(s.cols.cols()) = s.cols;
      for (std::size_t i = 0; i < rows_of[p]->size(); ++i) extended(static_cast<Index>(i), s.cols.cols()) = z((*rows_of[p])[i]);
      const std::size_t r = rank(extended);
      if (r == s.rank) continue;
      s.cols = std::move(extended);
      s.rank = r;
      h.representatives.push_back(z);
      h.degrees.push_back(k);
      ++found[p];
    }
  }
  if (found[0] < wanted[0] || found[1] < wanted[1])
    throw InternalInconsistency("no homogeneous representatives found for the generic cohomology of '" + m.name + "'");
  return h;
}

CohomologyReport cohomology_report(const InvariantModel& m, int cutoff) {
  return {cohomology_generic(m), cohomology_hilbert(m, cutoff)};
}

FracVector generic_coordinates(const InvariantModel& m, const GenericCohomology& h, const EquivariantElement& z) {
  check_element(m, z);
  const PolyMatrix D = cartan_matrix(m);
  const Index n = static_cast<Index>(m.size());
  const Index r = static_cast<Index>(h.representatives.size());
  PolyMatrix system(n, r + n);
  for (Index j = 0; j < r; ++j) system.col(j) = h.representatives[j];
  system.rightCols(n) = D;
  const auto s = rank_and_solve(system, FracVector(cast_exact<RationalFunction>(z)));
  if (!s.consistent) throw InternalInconsistency("element is not a cocycle; it does not decompose in the generic basis");
  return s.solution->head(r);
}

std::vector<std::size_t> ordinary_cohomology(const InvariantModel& m) {
  const int top = m.max_degree();
  std::vector<std::vector<Index>> by_degree(static_cast<std::size_t>(top) + 2);
  for (std::size_t g = 0; g < m.size(); ++g) by_degree[m.generators[g].degree].push_back(static_cast<Index>(g));
  std::vector<std::size_t> ranks;  // rank of d: C^k -> C^{k+1}
  for (int k = 0; k <= top; ++k) ranks.push_back(rank(RationalMatrix(m.d(by_degree[k + 1], by_degree[k]))));
  std::vector<std::size_t> h;
  for (int k = 0; k <= top; ++k) h.push_back(by_degree[k].size() - ranks[k] - (k > 0 ? ranks[k - 1] : 0));
  return h;
}

FreePrediction predict_free_hilbert(const InvariantModel& m, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("predict_free_hilbert: negative cutoff");
  FreePrediction p;
  p.underlying = ordinary_cohomology(m);
  p.predicted.assign(static_cast<std::size_t>(cutoff) + 1, 0);
  for (int k = 0; k <= cutoff; ++k)
    for (std::size_t j = 0; j < p.underlying.size(); ++j) {
      const int rest = k - static_cast<int>(j);
      if (rest >= 0 && rest % 2 == 0) p.predicted[k] += p.underlying[j] * monomial_count(rest / 2, m.torus_rank);
    }
  p.actual = cohomology_hilbert(m, cutoff);
  p.matches = p.predicted == p.actual;
  return p;
}

bool is_coboundary(const InvariantModel& m, const EquivariantElement& x) {
  const auto deg = total_degree(m, x);
  if (!deg) {
    if (is_zero_matrix(x)) return true;
    throw StructuralError("is_coboundary expects a homogeneous element");
  }
  if (*deg == 0) return false;
  const SliceBasis basis = slice_basis(m, *deg);
  const auto s = rank_and_solve(slice_boundary(m, *deg - 1), to_slice(m, basis, x));
  return s.consistent;
}

GenericRankCheck generic_rank_check(const InvariantModel& m, std::uint64_t seed) {
  const PolyMatrix D = cartan_matrix(m);
  GenericRankCheck c;
  c.exact_total = m.size() - 2 * rank(D);
  c.specialized = generic_specialized_rank(D, seed);
  c.specialized_total = m.size() - 2 * c.specialized.rank;
  return c;
}

}  // namespace eqcoh
